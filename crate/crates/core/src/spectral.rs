//! Eigen-decomposition of the recurrence for `d > 2`.
//!
//! `A` has eigenvalues `α± = (d ± √(d²−4))/2` with eigenvectors `(1, α±)ᵀ`.
//! Writing `(a_-1, a_0) = a₊(1, α₊) + a₋(1, α₋)` gives the closed form
//! `a_n = α₊ⁿ⁺¹a₊ + α₋ⁿ⁺¹a₋` for ranks and degrees alike.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{to_u64, QuadNum, Rat};
use crate::error::{Error, Result};
use crate::seed::Seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    pub alpha_plus: QuadNum,
    pub alpha_minus: QuadNum,
    pub r_plus: QuadNum,
    pub r_minus: QuadNum,
    pub d_plus: QuadNum,
    pub d_minus: QuadNum,
}

/// `d² − 4` as a radicand.
pub(crate) fn disc_radicand(d: &BigInt) -> Result<u64> {
    Ok(to_u64(&(d * d - 4), "d² − 4")?)
}

/// `α₊` and `α₋` for the characteristic polynomial `λ² − dλ + 1`.
pub fn eigenvalues(d: &BigInt) -> Result<(QuadNum, QuadNum)> {
    let n = disc_radicand(d)?;
    let half_d = Rat::new(d.clone(), 2)?;
    let half = Rat::new(1, 2)?;
    Ok((QuadNum::new(half_d.clone(), half.clone(), n), QuadNum::new(half_d, -half, n)))
}

fn split(lo: &BigInt, hi: &BigInt, ap: &QuadNum, am: &QuadNum) -> Result<(QuadNum, QuadNum)> {
    let lo_q = QuadNum::from_int(lo.clone());
    let hi_q = QuadNum::from_int(hi.clone());
    let gap = ap.checked_sub(am)?;
    let plus = hi_q.checked_sub(&am.checked_mul(&lo_q)?)?.checked_div(&gap)?;
    let minus = lo_q.checked_sub(&plus)?;
    Ok((plus, minus))
}

impl SpectralData {
    pub fn of(seed: &Seed) -> Result<Self> {
        let d = seed.det();
        if !(d.abs() > BigInt::from(2)) {
            return Err(Error::NeedsGenericD { op: "spectral", d });
        }
        let (alpha_plus, alpha_minus) = eigenvalues(&d)?;
        let (r_plus, r_minus) = split(seed.r_m1(), seed.r_0(), &alpha_plus, &alpha_minus)?;
        let (d_plus, d_minus) = split(seed.d_m1(), seed.d_0(), &alpha_plus, &alpha_minus)?;
        Ok(SpectralData { alpha_plus, alpha_minus, r_plus, r_minus, d_plus, d_minus })
    }

    fn closed_form(&self, n: i64, plus: &QuadNum, minus: &QuadNum) -> Result<QuadNum> {
        let up = self.alpha_plus.pow(n + 1)?.checked_mul(plus)?;
        let down = self.alpha_minus.pow(n + 1)?.checked_mul(minus)?;
        Ok(up.checked_add(&down)?)
    }

    /// `r_n` evaluated from the closed form.
    pub fn rank_at(&self, n: i64) -> Result<QuadNum> {
        self.closed_form(n, &self.r_plus, &self.r_minus)
    }

    /// `d_n` evaluated from the closed form.
    pub fn degree_at(&self, n: i64) -> Result<QuadNum> {
        self.closed_form(n, &self.d_plus, &self.d_minus)
    }

    /// `lim_{n→−∞} d_n / r_n = d₋ / r₋`.
    pub fn limit_slope(&self) -> Result<QuadNum> {
        Ok(self.d_minus.checked_div(&self.r_minus)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(r_m1: i64, r_0: i64, d_m1: i64, d_0: i64) -> Seed {
        Seed::new(r_m1, r_0, d_m1, d_0).unwrap()
    }

    #[test]
    fn eigenvalues_d3() {
        let s = seed(1, 1, 0, 3);
        let sp = SpectralData::of(&s).unwrap();
        assert_eq!(sp.alpha_plus, "3/2 + 1/2*sqrt(5)".parse().unwrap());
        assert_eq!(sp.alpha_minus, "3/2 - 1/2*sqrt(5)".parse().unwrap());
        // r₊ = (1 − α₋)/(α₊ − α₋)
        let want = QuadNum::from_int(1)
            .checked_sub(&sp.alpha_minus)
            .unwrap()
            .checked_div(&QuadNum::sqrt_of(5))
            .unwrap();
        assert_eq!(sp.r_plus, want);
        assert_eq!(sp.r_plus.checked_add(&sp.r_minus).unwrap(), QuadNum::from_int(1));
    }

    #[test]
    fn vieta() {
        for s in [seed(2, 1, -3, 1), seed(3, 1, -7, 1), seed(4, 7, 9, 17)] {
            let sp = SpectralData::of(&s).unwrap();
            assert_eq!(sp.alpha_plus.checked_mul(&sp.alpha_minus).unwrap(), QuadNum::from_int(1));
            assert_eq!(sp.alpha_plus.checked_add(&sp.alpha_minus).unwrap(), QuadNum::from_int(s.det()));
        }
    }

    #[test]
    fn eigen_components_positive() {
        let sp = SpectralData::of(&seed(2, 1, -3, 1)).unwrap();
        assert_eq!(sp.r_plus.signum(), 1);
        assert_eq!(sp.r_minus.signum(), 1);
    }

    #[test]
    fn reproduces_seed_and_recurrence() {
        let s = seed(2, 1, -3, 1);
        let sp = SpectralData::of(&s).unwrap();
        for t in s.rank_deg_window(-6, 6).unwrap() {
            assert_eq!(sp.rank_at(t.index).unwrap(), QuadNum::from_int(t.rank));
            assert_eq!(sp.degree_at(t.index).unwrap(), QuadNum::from_int(t.degree));
        }
    }

    #[test]
    fn small_d_not_applicable() {
        assert!(matches!(SpectralData::of(&seed(1, 1, 0, 2)), Err(Error::NeedsGenericD { .. })));
    }
}
