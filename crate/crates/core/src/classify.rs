//! Numerical classes of helices with prescribed `d` and `θ`.
//!
//! `θ` fixes `D` through its irrational coefficient `−d/(2D)`. The rank pairs
//! with that `D` fall into finitely many shift orbits, and over each orbit the
//! admissible degree vectors form `r̄` cosets modulo integer twists. Checking
//! the rational part of `θ` on every (orbit, coset) pair is then exhaustive.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{square_free_split, QuadNum, Rat};
use crate::error::{Error, Result};
use crate::ops::{normal_rank_pair, same_numerical_class, Equivalence};
use crate::seed::{big_d, Seed};
use crate::spectral::disc_radicand;
use crate::theta::{theta_formula, Theta};

/// One shift orbit of positive solutions of `d·r_-1·r_0 − r_-1² − r_0² = D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOrbit {
    /// Minimal representative, `r_0 ≤ r_-1 ≤ (d−1)·r_0`.
    #[serde(with = "crate::json::pair")]
    pub rep: (BigInt, BigInt),
    #[serde(with = "crate::json::bigint")]
    pub gcd_bar: BigInt,
    /// Index of the orbit of reversed rank pairs in the same list.
    pub dual_partner: usize,
}

impl RankOrbit {
    pub fn is_self_dual(&self, index: usize) -> bool {
        self.dual_partner == index
    }
}

fn require_generic(op: &'static str, d: &BigInt) -> Result<()> {
    if d <= &BigInt::from(2) {
        return Err(Error::NeedsGenericD { op, d: d.clone() });
    }
    Ok(())
}

/// Exact integer square root, if `n` is a perfect square.
fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// All shift orbits of rank pairs with invariant `D`, sorted by representative.
pub fn rank_solutions(d: &BigInt, big_d_val: &BigInt) -> Result<Vec<RankOrbit>> {
    require_generic("rank_solutions", d)?;
    if !big_d_val.is_positive() {
        return Err(Error::Domain(format!("D = {big_d_val} is not positive; no helix has these invariants")));
    }
    // On the minimality window D ≥ (d−2)·r_0², which bounds r_0.
    let r0_max: BigInt = Roots::sqrt(&(big_d_val / (d - 2)));
    let mut reps: Vec<(BigInt, BigInt)> = Vec::new();
    let mut r_0 = BigInt::one();
    while r_0 <= r0_max {
        let disc = (d * d - 4) * &r_0 * &r_0 - 4 * big_d_val;
        if let Some(s) = exact_sqrt(&disc) {
            for num in [d * &r_0 - &s, d * &r_0 + &s] {
                if num.is_odd() {
                    continue;
                }
                let r_m1 = num / 2;
                if r_m1 >= r_0 && r_m1 <= (d - 1) * &r_0 {
                    let rep = normal_rank_pair(d, &r_m1, &r_0)?;
                    if !reps.contains(&rep) {
                        reps.push(rep);
                    }
                }
            }
        }
        r_0 += 1;
    }
    reps.sort();

    let mut orbits = Vec::with_capacity(reps.len());
    for rep in &reps {
        if big_d(&rep.0, &rep.1, d) != *big_d_val {
            return Err(Error::Invariant(format!("representative {rep:?} has the wrong D")));
        }
        let dual = normal_rank_pair(d, &rep.1, &rep.0)?;
        let dual_partner = reps
            .iter()
            .position(|r| *r == dual)
            .ok_or_else(|| Error::Invariant(format!("dual of orbit {rep:?} missing")))?;
        orbits.push(RankOrbit { rep: rep.clone(), gcd_bar: rep.0.gcd(&rep.1), dual_partner });
    }
    Ok(orbits)
}

/// The `y > 0` with `d·y − y² − 1 = D`, valid when `0 < D < 4(d−2)`, where every
/// orbit has a representative `(y, 1)`.
pub fn small_d_reduce(d: &BigInt, big_d_val: &BigInt) -> Result<Vec<BigInt>> {
    require_generic("small_d_reduce", d)?;
    if !big_d_val.is_positive() || *big_d_val >= 4 * (d - 2) {
        return Err(Error::Domain(format!(
            "small-D reduction needs 0 < D < 4(d−2) = {}, got D = {big_d_val}",
            4 * (d - 2)
        )));
    }
    let disc = d * d - 4 - 4 * big_d_val;
    let Some(s) = exact_sqrt(&disc) else {
        return Ok(Vec::new());
    };
    if (d - &s).is_odd() {
        return Ok(Vec::new());
    }
    let mut ys = vec![(d - &s) / 2, (d + &s) / 2];
    ys.dedup();
    if *big_d_val < d - 2 {
        return Err(Error::Invariant(format!("D = {big_d_val} < d − 2 yet y = {} solves", ys[0])));
    }
    Ok(ys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realizability {
    Yes,
    No,
    /// The gcd condition holds but `r̄` is even, where the CRT argument breaks down.
    NecessaryHoldsUndetermined,
}

/// Whether some coordinatewise coprime degree vector gives determinant `d`.
pub fn realizable(d: &BigInt, r_m1: &BigInt, r_0: &BigInt) -> Realizability {
    let g = r_m1.gcd(r_0);
    if r_m1.gcd(d) != g || r_0.gcd(d) != g {
        Realizability::No
    } else if g.is_odd() {
        Realizability::Yes
    } else {
        Realizability::NecessaryHoldsUndetermined
    }
}

/// A degree vector with `d_0·r_-1 − d_-1·r_0 = d`, before any coprimality
/// adjustment, together with the step `(r_-1, r_0)/r̄` between solutions.
fn particular_degrees(d: &BigInt, r_m1: &BigInt, r_0: &BigInt) -> Result<((BigInt, BigInt), (BigInt, BigInt))> {
    let g = r_m1.gcd(r_0);
    if !d.is_multiple_of(&g) {
        return Err(Error::Domain(format!("gcd({r_m1}, {r_0}) = {g} does not divide d = {d}")));
    }
    let (p_m1, p_0, d_red) = (r_m1 / &g, r_0 / &g, d / &g);
    let e = p_m1.extended_gcd(&p_0);
    // x·r'_-1 + y·r'_0 = 1, so (d_-1, d_0) = (−y·d', x·d') has determinant d'.
    let particular = (-&e.y * &d_red, &e.x * &d_red);
    Ok((particular, (p_m1, p_0)))
}

fn coprime_to_ranks(r_m1: &BigInt, r_0: &BigInt, deg: &(BigInt, BigInt)) -> bool {
    r_m1.gcd(&deg.0).is_one() && r_0.gcd(&deg.1).is_one()
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Builds a seed with the given ranks and determinant whose two entries are
/// each coprime: a particular solution shifted by a multiple of the reduced
/// rank vector chosen by CRT to miss the bad residue of each prime `p | r̄`.
pub fn degree_construct(d: &BigInt, r_m1: &BigInt, r_0: &BigInt) -> Result<Seed> {
    if realizable(d, r_m1, r_0) != Realizability::Yes {
        return Err(Error::Domain(format!(
            "ranks ({r_m1}, {r_0}) are not realizable at d = {d} by the odd-gcd criterion"
        )));
    }
    let ((q_m1, q_0), (p_m1, p_0)) = particular_degrees(d, r_m1, r_0)?;
    let (mut m, mut modulus) = (BigInt::zero(), BigInt::one());
    for p in prime_factors(&r_m1.gcd(r_0)) {
        // m ≡ −q·p'⁻¹ (mod p) is the one bad class per coordinate, if p ∤ p'.
        let bad: Vec<BigInt> = [(&q_m1, &p_m1), (&q_0, &p_0)]
            .into_iter()
            .filter(|(_, step)| !step.is_multiple_of(&p))
            .map(|(q, step)| {
                let inv = step.extended_gcd(&p).x;
                (-q * inv).mod_floor(&p)
            })
            .collect();
        let mut good = BigInt::zero();
        while bad.contains(&good) {
            good += 1;
        }
        // Combine m ≡ current (mod modulus) with m ≡ good (mod p).
        let e = modulus.extended_gcd(&p);
        let k = ((&good - &m) * &e.x).mod_floor(&p);
        m += k * &modulus;
        modulus *= &p;
    }
    let seed = Seed::new(r_m1.clone(), r_0.clone(), &q_m1 + &m * &p_m1, &q_0 + &m * &p_0)?;
    if seed.det() != *d || !coprime_to_ranks(r_m1, r_0, &(seed.d_m1().clone(), seed.d_0().clone())) {
        return Err(Error::Invariant(format!("constructed seed {seed:?} misses its postconditions")));
    }
    Ok(seed)
}

/// `θ = a + b·√(d²−4)` over the uncanonicalized radicand, and `D = −d/(2b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaParts {
    pub a: Rat,
    pub b: Rat,
    pub big_d: BigInt,
}

pub fn theta_decompose(theta: &Theta, d: &BigInt) -> Result<ThetaParts> {
    require_generic("theta_decompose", d)?;
    let no_helix = |why: String| Error::NoHelixForTheta { d: d.clone(), why };
    let Theta::Finite(q) = theta else {
        return Err(no_helix("θ = −∞ occurs only for d = 2".into()));
    };
    if q.is_rational() {
        return Err(no_helix("θ is rational".into()));
    }
    let n = disc_radicand(d)?;
    let (s, core) = square_free_split(n);
    if q.radicand() != core {
        return Err(no_helix(format!("θ lies in Q(√{}) but d² − 4 = {n} has square-free part {core}", q.radicand())));
    }
    // b·√core = (b/s)·√n.
    let b = q.irrational_coeff() / &Rat::from_int(s);
    if b.signum() >= 0 {
        return Err(no_helix("the coefficient of √(d²−4) must be negative".into()));
    }
    let big_d_rat = -(Rat::from_int(d.clone()) / (Rat::from_int(2) * &b));
    let big_d_val = big_d_rat
        .to_integer()
        .ok_or_else(|| no_helix(format!("D = −d/(2b) = {big_d_rat} is not an integer")))?;
    Ok(ThetaParts { a: q.rational_part().clone(), b, big_d: big_d_val })
}

/// `θ` and the dual's `θ` agree up to an integer twist exactly when `2a ∈ ℤ`.
pub fn dual_shares_theta(parts: &ThetaParts) -> bool {
    (&parts.a * &Rat::from_int(2)).is_integer()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub seed: Seed,
    #[serde(with = "crate::json::pair")]
    pub orbit: (BigInt, BigInt),
    #[serde(with = "crate::json::bigint")]
    pub gcd_bar: BigInt,
    /// Which of the `r̄` twist cosets of degree solutions the class comes from.
    #[serde(with = "crate::json::bigint")]
    pub coset: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
    pub theta: Theta,
    #[serde(rename = "D", with = "crate::json::bigint")]
    pub big_d: BigInt,
    pub classes: Vec<ClassEntry>,
    pub count: usize,
    pub warnings: Vec<String>,
}

/// One representative per numerical class with hom dimension `d` and
/// negative limit slope `θ`. Classes are ordered by seed.
pub fn classify_theta(d: &BigInt, theta: &Theta) -> Result<ClassReport> {
    let two = BigInt::from(2);
    if d < &two {
        return Err(Error::Domain(format!("hom dimension d = {d} admits no helix (need d ≥ 2)")));
    }
    if d == &two {
        // All d = 2 helices are twists of one another.
        let classes = match theta {
            Theta::NegInfinity => {
                let seed = Seed::new(1, 1, 0, 2)?;
                vec![ClassEntry { seed, orbit: (1.into(), 1.into()), gcd_bar: 1.into(), coset: 0.into() }]
            }
            Theta::Finite(_) => Vec::new(),
        };
        let count = classes.len();
        return Ok(ClassReport { d: two, theta: theta.clone(), big_d: BigInt::zero(), classes, count, warnings: vec![] });
    }

    let parts = theta_decompose(theta, d)?;
    let target = theta.finite().expect("decomposed θ is finite");
    let mut warnings = Vec::new();
    let mut found: Vec<ClassEntry> = Vec::new();
    for orbit in rank_solutions(d, &parts.big_d)? {
        let (r_m1, r_0) = &orbit.rep;
        match realizable(d, r_m1, r_0) {
            Realizability::No => {
                warnings.push(format!(
                    "orbit ({r_m1}, {r_0}): gcd({r_m1}, {r_0}), gcd({r_m1}, d), gcd({r_0}, d) differ; no helix"
                ));
                continue;
            }
            Realizability::NecessaryHoldsUndetermined => warnings.push(format!(
                "orbit ({r_m1}, {r_0}): gcd {} is even, so realizability was decided by checking each twist coset",
                orbit.gcd_bar
            )),
            Realizability::Yes => {}
        }
        let ((q_m1, q_0), (p_m1, p_0)) = particular_degrees(d, r_m1, r_0)?;
        let mut m = BigInt::zero();
        while m < orbit.gcd_bar {
            let deg = (&q_m1 + &m * &p_m1, &q_0 + &m * &p_0);
            if coprime_to_ranks(r_m1, r_0, &deg) {
                let seed = Seed::new(r_m1.clone(), r_0.clone(), deg.0, deg.1)?;
                let gap = target.checked_sub(&theta_formula(&seed)?)?;
                if let Some(a) = gap.is_rational().then(|| gap.rational_part().to_integer()).flatten() {
                    let seed = seed.twist(&a);
                    found.push(ClassEntry {
                        seed,
                        orbit: orbit.rep.clone(),
                        gcd_bar: orbit.gcd_bar.clone(),
                        coset: m.clone(),
                    });
                }
            }
            m += 1;
        }
    }

    let mut classes: Vec<ClassEntry> = Vec::new();
    for entry in found {
        let mut duplicate = false;
        for kept in &classes {
            if let Equivalence::Same(_) = same_numerical_class(&kept.seed, &entry.seed, false)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            classes.push(entry);
        }
    }
    classes.sort_by(|x, y| {
        let key = |e: &ClassEntry| {
            let (a, b) = e.seed.ranks();
            let (c, d) = e.seed.degrees();
            (a.clone(), b.clone(), c.clone(), d.clone())
        };
        key(x).cmp(&key(y))
    });
    for entry in &classes {
        if entry.seed.theta()? != *theta {
            return Err(Error::Invariant(format!("class {:?} has the wrong θ", entry.seed)));
        }
    }
    let count = classes.len();
    Ok(ClassReport { d: d.clone(), theta: theta.clone(), big_d: parts.big_d, classes, count, warnings })
}

/// `θ` of the seed built by [`degree_construct`] for the given ranks.
pub fn canonical_theta(d: &BigInt, r_m1: &BigInt, r_0: &BigInt) -> Result<QuadNum> {
    theta_formula(&degree_construct(d, r_m1, r_0)?)
}
