//! Exact rationals and real quadratic numbers `a + b√N`.
//!
//! Every comparison is decided with integer arithmetic. Decimal output exists
//! only for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands √{0} and √{1}")]
    IncompatibleRadicands(u64, u64),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("cannot parse quadratic number {0:?}")]
    ParseQuad(String),
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
}

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn fract_part(&self) -> Rat {
        Rat(&self.0 - BigRational::from_integer(self.floor()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Serialized form: always `p/q`.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rat {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::ParseRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err())?;
                let q: BigInt = q.trim().parse().map_err(|_| err())?;
                Rat::new(p, q).map_err(|_| err())
            }
            None => Ok(Rat::from_int(t.parse::<BigInt>().map_err(|_| err())?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

// Division panics on a zero divisor, like integer division; use `recip` for a checked path.
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Splits `n = s² · core` with `core` square-free. `0` maps to `(0, 0)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, core * rest)
}

/// `a + b√N` with `N` square-free; rationals carry `N = 0` and `b = 0`.
///
/// The canonical form is enforced by the constructor, so derived equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rat,
    b: Rat,
    radicand: u64,
}

impl QuadNum {
    /// Builds `a + b√radicand`, factoring squares out of the radicand.
    pub fn new(a: Rat, b: Rat, radicand: u64) -> Self {
        let (square, core) = square_free_split(radicand);
        if b.is_zero() || core == 0 {
            return QuadNum { a, b: Rat::zero(), radicand: 0 };
        }
        let b = b * Rat::from_int(square);
        if core == 1 {
            QuadNum { a: a + b, b: Rat::zero(), radicand: 0 }
        } else {
            QuadNum { a, b, radicand: core }
        }
    }

    pub fn rational(a: Rat) -> Self {
        QuadNum { a, b: Rat::zero(), radicand: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::rational(Rat::from_int(n))
    }

    /// `√n` in canonical form.
    pub fn sqrt_of(n: u64) -> Self {
        Self::new(Rat::zero(), Rat::one(), n)
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²N. Equality is impossible for square-free N > 1.
        let a2 = &self.a * &self.a;
        let b2n = &(&self.b * &self.b) * &Rat::from_int(self.radicand);
        if a2 > b2n {
            sa
        } else {
            sb
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ArithError> {
        match (self.radicand, other.radicand) {
            (0, n) | (n, 0) => Ok(n),
            (m, n) if m == n => Ok(m),
            (m, n) => Err(ArithError::IncompatibleRadicands(m, n)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let n = self.common_radicand(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, n))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let n = self.common_radicand(other)?;
        let nn = Rat::from_int(n);
        let a = &(&self.a * &other.a) + &(&(&self.b * &other.b) * &nn);
        let b = &(&self.a * &other.b) + &(&self.b * &other.a);
        Ok(Self::new(a, b, n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        QuadNum { a: -&self.a, b: -&self.b, radicand: self.radicand }
    }

    pub fn conj(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -&self.b, radicand: self.radicand }
    }

    /// Field norm `a² − b²N`.
    pub fn norm(&self) -> Rat {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rat::from_int(self.radicand))
    }

    /// `(a + b√N)⁻¹ = (a − b√N) / (a² − b²N)`.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm().recip()?;
        Ok(Self::new(&self.a * &n, -(&self.b * &n), self.radicand))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(&self.a * k, &self.b * k, self.radicand)
    }

    pub fn add_rat(&self, k: &Rat) -> Self {
        QuadNum { a: &self.a + k, b: self.b.clone(), radicand: self.radicand }
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact ordering of the two real values.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering, ArithError> {
        Ok(match self.checked_sub(other)?.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// `floor(value · 10^digits)` up to one unit in the last place.
    pub fn scaled_approx(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let m = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&m / self.a.denom());
        let q = self.b.numer() * (&m / self.b.denom());
        let root = (&q * &q * BigInt::from(self.radicand) * &scale * &scale).sqrt();
        let irr = if q.is_negative() { -root } else { root };
        (p * &scale + irr).div_floor(&m)
    }

    /// Decimal rendering with `digits` fractional digits (display only).
    pub fn to_decimal(&self, digits: u32) -> String {
        let n = self.scaled_approx(digits);
        let neg = n.is_negative();
        let s = n.abs().to_string();
        let digits = digits as usize;
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for QuadNum {
    /// Renders in the grammar accepted by `FromStr`, e.g. `1/2 - 1/2*sqrt(21)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = self.b.abs();
        let irr = if coeff == Rat::one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", coeff, self.radicand)
        };
        match (self.a.is_zero(), self.b.signum() < 0) {
            (true, false) => write!(f, "{irr}"),
            (true, true) => write!(f, "-{irr}"),
            (false, false) => write!(f, "{} + {irr}", self.a),
            (false, true) => write!(f, "{} - {irr}", self.a),
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {})", self.a, self.b, self.radicand)
    }
}

impl FromStr for QuadNum {
    type Err = ArithError;

    /// Accepts `[sign] p[/q] [sign [p[/q]][*] sqrt(N)]`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use std::sync::OnceLock;
        static GRAMMAR: OnceLock<regex::Regex> = OnceLock::new();
        let re = GRAMMAR.get_or_init(|| {
            regex::Regex::new(
                r"^(?:(?P<rat>[+-]?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?:(?P<coef>\d+(?:/\d+)?)\*)?sqrt\((?P<rad>\d+)\))?|(?P<lsign>[+-])?(?:(?P<lcoef>\d+(?:/\d+)?)\*)?sqrt\((?P<lrad>\d+)\))$",
            )
            .expect("static regex")
        });
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ArithError::ParseQuad(s.to_string());
        let caps = re.captures(&compact).ok_or_else(err)?;
        let rat = caps.name("rat");
        let rad = caps.name("rad").or(caps.name("lrad"));
        let coef = caps.name("coef").or(caps.name("lcoef"));
        let sign = caps.name("sign").or(caps.name("lsign"));
        let a = match rat {
            Some(m) => m.as_str().parse::<Rat>()?,
            None => Rat::zero(),
        };
        let Some(rad) = rad else {
            return Ok(Self::rational(a));
        };
        let n: u64 = rad.as_str().parse().map_err(|_| err())?;
        let mut b = match coef {
            Some(m) => m.as_str().parse::<Rat>()?,
            None => Rat::one(),
        };
        if sign.map(|m| m.as_str()) == Some("-") {
            b = -b;
        }
        Ok(Self::new(a, b, n))
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    a: Rat,
    b: Rat,
    radicand: u64,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadJson { a: self.a.clone(), b: self.b.clone(), radicand: self.radicand }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = QuadJson::deserialize(d)?;
        Ok(QuadNum::new(q.a, q.b, q.radicand))
    }
}

/// Converts to `u64`, reporting values outside the supported range.
pub(crate) fn to_u64(n: &BigInt, what: &str) -> Result<u64, ArithError> {
    n.to_u64().ok_or_else(|| ArithError::OutOfRange(format!("{what} = {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    fn q(a: Rat, b: Rat, n: u64) -> QuadNum {
        QuadNum::new(a, b, n)
    }

    #[test]
    fn canonicalize_examples() {
        let x = q(r(0, 1), r(1, 1), 96);
        assert_eq!(x.rational_part(), &r(0, 1));
        assert_eq!(x.irrational_coeff(), &r(4, 1));
        assert_eq!(x.radicand(), 6);

        let y = q(r(1, 2), r(-1, 2), 21);
        assert_eq!((y.rational_part(), y.irrational_coeff(), y.radicand()), (&r(1, 2), &r(-1, 2), 21));

        let z = q(r(3, 1), r(5, 1), 4);
        assert_eq!(z, QuadNum::from_int(13));
        assert_eq!(z.radicand(), 0);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for n in [0u64, 1, 4, 8, 12, 21, 96, 320, 1000] {
            let x = q(r(3, 7), r(-5, 3), n);
            let again = q(x.rational_part().clone(), x.irrational_coeff().clone(), x.radicand());
            assert_eq!(x, again);
        }
    }

    #[test]
    fn square_free_split_small() {
        assert_eq!(square_free_split(96), (4, 6));
        assert_eq!(square_free_split(21), (1, 21));
        assert_eq!(square_free_split(4), (2, 1));
        assert_eq!(square_free_split(1), (1, 1));
        assert_eq!(square_free_split(77), (1, 77));
        assert_eq!(square_free_split(2 * 9 * 49), (21, 2));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(r(0, 1), r(0, 1), 21).signum(), 0);
        assert_eq!(q(r(1, 2), r(-1, 2), 21).signum(), -1);
        assert_eq!(q(r(0, 1), r(5, 21), 21).signum(), 1);
        assert_eq!(q(r(5, 1), r(-1, 1), 21).signum(), 1);
        assert_eq!(q(r(-5, 1), r(1, 1), 21).signum(), -1);
    }

    #[test]
    fn arithmetic_examples() {
        let alpha_plus = q(r(5, 2), r(1, 2), 21);
        assert_eq!(alpha_plus.inv().unwrap(), q(r(5, 2), r(-1, 2), 21));
        let s6 = QuadNum::sqrt_of(6);
        assert_eq!(s6.checked_mul(&s6).unwrap(), QuadNum::from_int(6));
        let x = q(r(1, 2), r(-1, 2), 21);
        let y = q(r(-1, 2), r(1, 2), 21);
        assert!(x.checked_add(&y).unwrap().is_zero());
    }

    #[test]
    fn inverse_of_zero_and_mixed_radicands_fail() {
        assert_eq!(QuadNum::zero().inv(), Err(ArithError::DivisionByZero));
        let err = QuadNum::sqrt_of(2).checked_add(&QuadNum::sqrt_of(3)).unwrap_err();
        assert_eq!(err, ArithError::IncompatibleRadicands(2, 3));
        // A rational operand is compatible with anything.
        assert!(QuadNum::sqrt_of(2).checked_mul(&QuadNum::from_int(3)).is_ok());
    }

    #[test]
    fn pow_negative_uses_inverse() {
        let alpha_plus = q(r(5, 2), r(1, 2), 21);
        let alpha_minus = alpha_plus.conj();
        assert_eq!(alpha_plus.pow(-3).unwrap(), alpha_minus.pow(3).unwrap());
        assert_eq!(alpha_plus.pow(0).unwrap(), QuadNum::from_int(1));
    }

    #[test]
    fn parse_grammar() {
        let cases = [
            ("-sqrt(6)", q(r(0, 1), r(-1, 1), 6)),
            ("1/2 - 1/2*sqrt(21)", q(r(1, 2), r(-1, 2), 21)),
            ("23/10-1/30*sqrt(21)", q(r(23, 10), r(-1, 30), 21)),
            (" - 1/4 * sqrt( 96 ) ", q(r(0, 1), r(-1, 1), 6)),
            ("3", QuadNum::from_int(3)),
            ("-7/3", QuadNum::rational(r(-7, 3))),
            ("2 + sqrt(5)", q(r(2, 1), r(1, 1), 5)),
            ("sqrt(5)", QuadNum::sqrt_of(5)),
        ];
        for (s, want) in cases {
            assert_eq!(s.parse::<QuadNum>().unwrap(), want, "{s}");
        }
        for bad in ["", "sqrt", "1/0", "1/2 sqrt(5)", "x", "1 - sqrt(-5)", "1/2/3"] {
            assert!(bad.parse::<QuadNum>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in ["1/2 - 1/2*sqrt(21)", "-sqrt(6)", "23/10 - 1/30*sqrt(21)", "5", "3/2 + sqrt(7)"] {
            let x: QuadNum = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(x.to_string().parse::<QuadNum>().unwrap(), x);
        }
    }

    #[test]
    fn json_schema() {
        let x: QuadNum = "1/2 - 1/2*sqrt(21)".parse().unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"a": "1/2", "b": "-1/2", "radicand": 21}));
        let back: QuadNum = serde_json::from_value(serde_json::json!({"a": "0/1", "b": "1/1", "radicand": 96})).unwrap();
        assert_eq!(back, q(r(0, 1), r(4, 1), 6));
    }

    #[test]
    fn decimal_rendering() {
        let x: QuadNum = "1/2 - 1/2*sqrt(21)".parse().unwrap();
        // (1 - 4.58257569...)/2
        assert_eq!(x.to_decimal(6), "-1.791288");
        assert_eq!(QuadNum::rational(r(1, 8)).to_decimal(3), "0.125");
        assert_eq!(QuadNum::sqrt_of(2).to_decimal(5), "1.41421");
    }
}
