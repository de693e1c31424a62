//! Ampleness of helices for the noncommutative curve, via the determinant test
//! `det M > √(d²−4)` on two consecutive (rank, degree) rows.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{QuadNum, Rat};
use crate::error::{Error, Result};
use crate::seed::{ExtendVerdict, Seed, Term};
use crate::spectral::{disc_radicand, SpectralData};

/// True iff `det M > 0` and `(det M)² > recurrence_d² − 4`, where `M` has rows
/// `(r_-1, d_-1)` and `(r_0, d_0)`.
pub fn ample_det_check(seed: &Seed, recurrence_d: &BigInt) -> bool {
    let det = seed.det();
    det.is_positive() && &det * &det > recurrence_d * recurrence_d - 4
}

fn require_generic(seed: &Seed, op: &'static str) -> Result<()> {
    match seed.extendable() {
        ExtendVerdict::YesGeneric => Ok(()),
        ExtendVerdict::No(reason) => Err(Error::NotExtendable(reason)),
        ExtendVerdict::Yes2 => Err(Error::NeedsGenericD { op, d: seed.det() }),
    }
}

/// `lim_{n→−∞} r_n²(d_n/r_n − θ) = r₋d₊ − r₊d₋`, which equals `d/√(d²−4)`.
pub fn limit_product(seed: &Seed) -> Result<QuadNum> {
    require_generic(seed, "limit_product")?;
    let sp = SpectralData::of(seed)?;
    let value = sp.r_minus.checked_mul(&sp.d_plus)?.checked_sub(&sp.r_plus.checked_mul(&sp.d_minus)?)?;
    let d = seed.det();
    let expected = QuadNum::sqrt_of(disc_radicand(&d)?).inv()?.scale(&Rat::from_int(d));
    if value != expected {
        return Err(Error::Invariant(format!("limit product {value} differs from d/√(d²−4) = {expected}")));
    }
    Ok(value)
}

/// `r_n² (d_n/r_n − θ) = r_n·d_n − r_n²·θ` at index `n`.
pub fn window_product(seed: &Seed, n: i64) -> Result<QuadNum> {
    require_generic(seed, "window_product")?;
    let theta = seed.theta()?;
    let theta = theta.finite().expect("generic seeds have finite θ");
    let term = seed.rank_deg_window(n, n)?.remove(0);
    let r = Rat::from_int(term.rank.clone());
    let rd = QuadNum::rational(&r * &Rat::from_int(term.degree));
    Ok(rd.checked_sub(&theta.scale(&(&r * &r)))?)
}

/// Every extendable seed with `d > 2` passes; kept as a check rather than a constant.
pub fn ample_two_periodic(seed: &Seed) -> Result<bool> {
    require_generic(seed, "ample_two_periodic")?;
    Ok(ample_det_check(seed, &seed.det()))
}

/// Terms of the three-periodic helix with `a_{n+1} = d·a_n − d·a_{n−1} + a_{n−2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePeriodicSeq {
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
    pub terms: Vec<Term>,
}

impl ThreePeriodicSeq {
    pub fn get(&self, n: i64) -> Option<&Term> {
        self.terms.iter().find(|t| t.index == n)
    }
}

fn require_three_periodic(d: &BigInt) -> Result<()> {
    if d < &BigInt::from(3) {
        return Err(Error::Domain(format!("three-periodic helices need d ≥ 3, got {d}")));
    }
    Ok(())
}

/// Generated in both directions from `(d_0, r_0) = (0, 1)`, `(d_1, r_1) = (d, 1)`,
/// `(d_2, r_2) = (d² − d, d − 2)`.
pub fn three_periodic_seq(d: &BigInt, n_min: i64, n_max: i64) -> Result<ThreePeriodicSeq> {
    require_three_periodic(d)?;
    if n_min > n_max {
        return Err(Error::EmptyWindow(n_min, n_max));
    }
    let init = [
        (BigInt::from(1), BigInt::from(0)),
        (BigInt::from(1), d.clone()),
        (d - 2, d * d - d),
    ];
    // Pairs (rank, degree) indexed from `lo`.
    let lo = n_min.min(0);
    let hi = n_max.max(2);
    let mut vals: Vec<(BigInt, BigInt)> = vec![(BigInt::from(0), BigInt::from(0)); (hi - lo + 1) as usize];
    let at = |n: i64| (n - lo) as usize;
    for (k, v) in init.into_iter().enumerate() {
        vals[at(k as i64)] = v;
    }
    for n in 3..=hi {
        let step = |f: fn(&(BigInt, BigInt)) -> &BigInt| {
            d * f(&vals[at(n - 1)]) - d * f(&vals[at(n - 2)]) + f(&vals[at(n - 3)])
        };
        vals[at(n)] = (step(|p| &p.0), step(|p| &p.1));
    }
    for n in (lo..0).rev() {
        let step = |f: fn(&(BigInt, BigInt)) -> &BigInt| {
            f(&vals[at(n + 3)]) - d * f(&vals[at(n + 2)]) + d * f(&vals[at(n + 1)])
        };
        vals[at(n)] = (step(|p| &p.0), step(|p| &p.1));
    }
    let terms = (n_min..=n_max)
        .map(|n| {
            let (rank, degree) = vals[at(n)].clone();
            Term { index: n, rank, degree }
        })
        .collect();
    Ok(ThreePeriodicSeq { d: d.clone(), terms })
}

/// `(d_n, d_{n−1}, d_{n−2}) × (r_n, r_{n−1}, r_{n−2})` for `n` in the window.
pub fn three_periodic_cross(seq: &ThreePeriodicSeq, n: i64) -> Option<[BigInt; 3]> {
    let (a, b, c) = (seq.get(n)?, seq.get(n - 1)?, seq.get(n - 2)?);
    let (d0, d1, d2) = (&a.degree, &b.degree, &c.degree);
    let (r0, r1, r2) = (&a.rank, &b.rank, &c.rank);
    Some([d1 * r2 - d2 * r1, d2 * r0 - d0 * r2, d0 * r1 - d1 * r0])
}

/// Checks that the cross products over a window all equal `d·(1, 1−d, 1)`, the
/// eigenvector of the eigenvalue 1 of the recurrence, and the determinant test
/// `d > √((d−1)² − 4)` on rows `(r_-1, d_-1) = (d−2, −d)` and `(r_0, d_0) = (1, 0)`.
pub fn three_periodic_ample(d: &BigInt) -> Result<bool> {
    let seq = three_periodic_seq(d, -6, 6)?;
    let want = [d.clone(), d * (1 - d), d.clone()];
    for n in -4..=6 {
        if three_periodic_cross(&seq, n).as_ref() != Some(&want) {
            return Err(Error::Invariant(format!("cross product at n = {n} is not d·(1, 1−d, 1) for d = {d}")));
        }
    }
    let rows = Seed::new(d - 2, 1, -d, 0)?;
    Ok(ample_det_check(&rows, &(d - 1)))
}
