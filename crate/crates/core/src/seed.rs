//! Numerical seeds and the two-term rank/degree recurrence.
//!
//! A seed `(r_-1, r_0; d_-1, d_0)` determines whole bi-infinite sequences via
//! `(a_{n-1}, a_n)ᵀ = Aⁿ (a_-1, a_0)ᵀ` with `A = [[0, 1], [-1, d]]`, where `d`
//! is the determinant of the seed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::BigIntJson;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    r_m1: BigInt,
    r_0: BigInt,
    d_m1: BigInt,
    d_0: BigInt,
}

/// One term of the sequence: the `index`-th bundle's rank and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub index: i64,
    #[serde(with = "crate::json::bigint")]
    pub rank: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub degree: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RejectReason {
    DTooSmall,
    DNonPositive,
    RankDegreeD2Violation,
    SlopeOrderViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtendVerdict {
    /// `d = 2`, both ranks 1, consecutive degrees differ by 2.
    Yes2,
    /// `d > 2` and `D > 0`.
    YesGeneric,
    No(RejectReason),
}

impl ExtendVerdict {
    pub fn is_yes(self) -> bool {
        !matches!(self, ExtendVerdict::No(_))
    }
}

/// `D = d·r_-1·r_0 − r_-1² − r_0²`.
pub fn big_d(r_m1: &BigInt, r_0: &BigInt, d: &BigInt) -> BigInt {
    d * r_m1 * r_0 - r_m1 * r_m1 - r_0 * r_0
}

impl Seed {
    pub fn new(
        r_m1: impl Into<BigInt>,
        r_0: impl Into<BigInt>,
        d_m1: impl Into<BigInt>,
        d_0: impl Into<BigInt>,
    ) -> Result<Self> {
        let (r_m1, r_0) = (r_m1.into(), r_0.into());
        if !r_m1.is_positive() || !r_0.is_positive() {
            return Err(Error::NonPositiveSeedRank { r_m1, r_0 });
        }
        Ok(Seed { r_m1, r_0, d_m1: d_m1.into(), d_0: d_0.into() })
    }

    pub fn r_m1(&self) -> &BigInt {
        &self.r_m1
    }

    pub fn r_0(&self) -> &BigInt {
        &self.r_0
    }

    pub fn d_m1(&self) -> &BigInt {
        &self.d_m1
    }

    pub fn d_0(&self) -> &BigInt {
        &self.d_0
    }

    pub fn ranks(&self) -> (&BigInt, &BigInt) {
        (&self.r_m1, &self.r_0)
    }

    pub fn degrees(&self) -> (&BigInt, &BigInt) {
        (&self.d_m1, &self.d_0)
    }

    /// `d_0·r_-1 − d_-1·r_0`, the hom dimension `d` for a valid seed.
    pub fn det(&self) -> BigInt {
        &self.d_0 * &self.r_m1 - &self.d_m1 * &self.r_0
    }

    pub fn big_d(&self) -> BigInt {
        big_d(&self.r_m1, &self.r_0, &self.det())
    }

    /// Decides whether the pair extends to a two-periodic helix.
    pub fn extendable(&self) -> ExtendVerdict {
        let d = self.det();
        // μ_-1 < μ_0 is equivalent to d > 0 since both ranks are positive.
        if !d.is_positive() {
            return ExtendVerdict::No(RejectReason::SlopeOrderViolation);
        }
        if d.is_one() {
            return ExtendVerdict::No(RejectReason::DTooSmall);
        }
        if d == BigInt::from(2) {
            return if self.r_m1.is_one() && self.r_0.is_one() {
                ExtendVerdict::Yes2
            } else {
                ExtendVerdict::No(RejectReason::RankDegreeD2Violation)
            };
        }
        if big_d(&self.r_m1, &self.r_0, &d).is_positive() {
            ExtendVerdict::YesGeneric
        } else {
            ExtendVerdict::No(RejectReason::DNonPositive)
        }
    }

    /// Errors unless the seed extends; returns the verdict otherwise.
    pub fn require_extendable(&self) -> Result<ExtendVerdict> {
        match self.extendable() {
            ExtendVerdict::No(reason) => Err(Error::NotExtendable(reason)),
            v => Ok(v),
        }
    }

    /// Ranks and degrees `(n, r_n, d_n)` for `n_min ≤ n ≤ n_max`.
    pub fn rank_deg_window(&self, n_min: i64, n_max: i64) -> Result<Vec<Term>> {
        if n_min > n_max {
            return Err(Error::EmptyWindow(n_min, n_max));
        }
        let d = self.det();
        let mut terms = Vec::with_capacity((n_max - n_min + 1) as usize);

        // Backward from index -1 down to n_min: a_{n-1} = d·a_n − a_{n+1}.
        if n_min <= 0 {
            let mut back = Vec::new();
            let (mut r_hi, mut r_lo) = (self.r_0.clone(), self.r_m1.clone());
            let (mut d_hi, mut d_lo) = (self.d_0.clone(), self.d_m1.clone());
            let mut idx = -1i64;
            if n_max >= 0 && n_min <= 0 {
                back.push(Term { index: 0, rank: self.r_0.clone(), degree: self.d_0.clone() });
            }
            while idx >= n_min {
                if idx <= n_max {
                    back.push(Term { index: idx, rank: r_lo.clone(), degree: d_lo.clone() });
                }
                let r_next = &d * &r_lo - &r_hi;
                let d_next = &d * &d_lo - &d_hi;
                r_hi = std::mem::replace(&mut r_lo, r_next);
                d_hi = std::mem::replace(&mut d_lo, d_next);
                idx -= 1;
            }
            back.reverse();
            terms.extend(back);
        }

        // Forward from index 1 up to n_max: a_{n+1} = d·a_n − a_{n-1}.
        if n_max >= 1 {
            let (mut r_lo, mut r_hi) = (self.r_m1.clone(), self.r_0.clone());
            let (mut d_lo, mut d_hi) = (self.d_m1.clone(), self.d_0.clone());
            for idx in 1..=n_max {
                let r_next = &d * &r_hi - &r_lo;
                let d_next = &d * &d_hi - &d_lo;
                r_lo = std::mem::replace(&mut r_hi, r_next);
                d_lo = std::mem::replace(&mut d_hi, d_next);
                if idx >= n_min {
                    terms.push(Term { index: idx, rank: r_hi.clone(), degree: d_hi.clone() });
                }
            }
        }
        Ok(terms)
    }

    /// The seed built from consecutive terms `n-1, n` of the sequence, without
    /// the positivity check.
    pub(crate) fn from_parts_unchecked(r_m1: BigInt, r_0: BigInt, d_m1: BigInt, d_0: BigInt) -> Self {
        Seed { r_m1, r_0, d_m1, d_0 }
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.r_m1, self.r_0, self.d_m1, self.d_0)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = ({}, {}), deg = ({}, {})", self.r_m1, self.r_0, self.d_m1, self.d_0)
    }
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    r: [BigIntJson; 2],
    deg: [BigIntJson; 2],
}

impl Serialize for Seed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeedJson {
            r: [BigIntJson(self.r_m1.clone()), BigIntJson(self.r_0.clone())],
            deg: [BigIntJson(self.d_m1.clone()), BigIntJson(self.d_0.clone())],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let SeedJson { r: [r_m1, r_0], deg: [d_m1, d_0] } = SeedJson::deserialize(d)?;
        Seed::new(r_m1.0, r_0.0, d_m1.0, d_0.0).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(r_m1: i64, r_0: i64, d_m1: i64, d_0: i64) -> Seed {
        Seed::new(r_m1, r_0, d_m1, d_0).unwrap()
    }

    fn triples(terms: &[Term]) -> Vec<(i64, i64, i64)> {
        terms
            .iter()
            .map(|t| (t.index, i64::try_from(&t.rank).unwrap(), i64::try_from(&t.degree).unwrap()))
            .collect()
    }

    #[test]
    fn det_examples() {
        assert_eq!(seed(2, 1, -3, 1).det(), BigInt::from(5));
        assert_eq!(seed(1, 1, 0, 2).det(), BigInt::from(2));
        assert_eq!(seed(4, 7, 9, 17).det(), BigInt::from(5));
    }

    #[test]
    fn big_d_examples() {
        let b = |x: i64, y: i64, d: i64| big_d(&x.into(), &y.into(), &d.into());
        assert_eq!(b(2, 1, 5), BigInt::from(5));
        assert_eq!(b(3, 1, 10), BigInt::from(20));
        assert_eq!(b(5, 5, 5), BigInt::from(75));
    }

    #[test]
    fn extendable_examples() {
        assert_eq!(seed(1, 1, 0, 2).extendable(), ExtendVerdict::Yes2);
        assert_eq!(seed(2, 1, -3, 1).extendable(), ExtendVerdict::YesGeneric);
        assert_eq!(seed(1, 3, 0, 1).extendable(), ExtendVerdict::No(RejectReason::DTooSmall));
        assert_eq!(seed(1, 1, 1, 0).extendable(), ExtendVerdict::No(RejectReason::SlopeOrderViolation));
        assert_eq!(seed(2, 2, 1, 2).extendable(), ExtendVerdict::No(RejectReason::RankDegreeD2Violation));
        // d = 3, ranks (1, 5): D = 15 - 26 < 0
        assert_eq!(seed(1, 5, 0, 3).extendable(), ExtendVerdict::No(RejectReason::DNonPositive));
    }

    #[test]
    fn nonpositive_ranks_rejected() {
        assert!(matches!(Seed::new(0, 1, 0, 1), Err(Error::NonPositiveSeedRank { .. })));
        assert!(matches!(Seed::new(1, -2, 0, 1), Err(Error::NonPositiveSeedRank { .. })));
    }

    #[test]
    fn window_examples() {
        let s = seed(2, 1, -3, 1);
        assert_eq!(triples(&s.rank_deg_window(0, 1).unwrap()), vec![(0, 1, 1), (1, 3, 8)]);

        let line = seed(1, 1, 0, 2).rank_deg_window(-3, 3).unwrap();
        let want: Vec<_> = (-3..=3).map(|n| (n, 1, 2 * n + 2)).collect();
        assert_eq!(triples(&line), want);

        let s = seed(3, 1, -7, 1);
        let w = triples(&s.rank_deg_window(-2, -2).unwrap());
        assert_eq!(w, vec![(-2, 29, -71)]);
        assert_eq!(big_d(&29.into(), &3.into(), &10.into()), BigInt::from(20));
    }

    #[test]
    fn window_covers_seed_terms() {
        let s = seed(4, 7, 9, 17);
        let w = triples(&s.rank_deg_window(-1, 0).unwrap());
        assert_eq!(w, vec![(-1, 4, 9), (0, 7, 17)]);
        let w = s.rank_deg_window(-5, 5).unwrap();
        assert_eq!(w.len(), 11);
        assert!(w.windows(2).all(|p| p[1].index == p[0].index + 1));
        let only_forward = s.rank_deg_window(2, 3).unwrap();
        assert_eq!(only_forward[0].index, 2);
        let only_back = s.rank_deg_window(-4, -3).unwrap();
        assert_eq!(only_back.iter().map(|t| t.index).collect::<Vec<_>>(), vec![-4, -3]);
        assert!(s.rank_deg_window(1, 0).is_err());
    }

    #[test]
    fn json_schema() {
        let s = seed(2, 1, -3, 1);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"r": [2, 1], "deg": [-3, 1]}));
        let back: Seed = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Seed>(r#"{"r": [0, 1], "deg": [0, 1]}"#).is_err());
        assert!(serde_json::from_str::<Seed>(r#"{"r": [1], "deg": [0, 1]}"#).is_err());
    }
}
