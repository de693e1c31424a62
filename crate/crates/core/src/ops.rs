//! Shift, twist and dual, plus the numerical-class decision procedure.
//!
//! Two helices are in the same numerical class when one is a shift of an
//! integer twist of the other. For `d > 2` the rank sequence is strictly
//! convex, so every sequence has one or two positions where the rank attains
//! its minimum. Comparing those positions makes the decision finite.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::seed::{ExtendVerdict, Seed};

/// `dual`, then `shift`, then `twist` carries the first seed onto the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EquivWitness {
    pub shift: i64,
    #[serde(with = "crate::json::bigint")]
    pub twist: BigInt,
    pub dual: bool,
}

impl EquivWitness {
    pub fn apply(&self, seed: &Seed) -> Result<Seed> {
        let base = if self.dual { seed.dual() } else { seed.clone() };
        Ok(base.shift(self.shift)?.twist(&self.twist))
    }
}

impl fmt::Display for EquivWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift {} then twist {}", self.shift, self.twist)?;
        if self.dual {
            f.write_str(" after dualizing")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinctReason {
    HomDimensionMismatch { d1: BigInt, d2: BigInt },
    /// No minimal position of the second rank sequence matches the first.
    RankOrbits,
    /// Ranks line up but the degrees differ by a non-integral twist.
    TwistCoset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Same(EquivWitness),
    Distinct(DistinctReason),
}

impl Equivalence {
    pub fn witness(&self) -> Option<&EquivWitness> {
        match self {
            Equivalence::Same(w) => Some(w),
            Equivalence::Distinct(_) => None,
        }
    }
}

/// Result of shifting a seed to the minimum of its rank sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub seed: Seed,
    /// `seed == original.shift(shift)`.
    pub shift: i64,
    /// A neighbouring rank equals the minimum.
    pub tie: bool,
}

type Pair = (BigInt, BigInt);
/// Ranks, degrees and shift of one position in the sequence.
type Position = (Pair, Pair, i64);

fn step_forward(d: &BigInt, (lo, hi): &Pair) -> Pair {
    (hi.clone(), d * hi - lo)
}

fn step_back(d: &BigInt, (lo, hi): &Pair) -> Pair {
    (d * lo - hi, lo.clone())
}

/// Walks `(ranks, degrees)` to a position satisfying `r_0 ≤ r_-1 ≤ (d−1)·r_0`.
/// Returns the ranks, degrees, the shift taken and the tie candidate, if any.
fn walk_to_minimum(d: &BigInt, ranks: Pair, degrees: Pair) -> Result<(Pair, Pair, i64, Option<Position>)> {
    let (mut r, mut g, mut n) = (ranks, degrees, 0i64);
    loop {
        if !r.0.is_positive() || !r.1.is_positive() {
            return Err(Error::Invariant(format!("rank sequence left the positive cone at shift {n}")));
        }
        let next = d * &r.1 - &r.0;
        if r.1 > r.0 {
            r = step_back(d, &r);
            g = step_back(d, &g);
            n -= 1;
        } else if r.1 > next {
            r = step_forward(d, &r);
            g = step_forward(d, &g);
            n += 1;
        } else {
            break;
        }
    }
    let next = d * &r.1 - &r.0;
    let alt = if r.0 == r.1 {
        Some((step_back(d, &r), step_back(d, &g), n - 1))
    } else if next == r.1 {
        Some((step_forward(d, &r), step_forward(d, &g), n + 1))
    } else {
        None
    };
    Ok((r, g, n, alt))
}

/// Canonical minimal rank pair of the orbit `{Aⁿ(r_-1, r_0)}` for the given `d > 2`.
/// Ties resolve to the smaller `r_-1`.
pub fn normal_rank_pair(d: &BigInt, r_m1: &BigInt, r_0: &BigInt) -> Result<(BigInt, BigInt)> {
    if d <= &BigInt::from(2) {
        return Err(Error::NeedsGenericD { op: "normal_rank_pair", d: d.clone() });
    }
    let zero = (BigInt::zero(), BigInt::zero());
    let (r, _, _, alt) = walk_to_minimum(d, (r_m1.clone(), r_0.clone()), zero)?;
    Ok(match alt {
        Some((ar, _, _)) if ar.0 < r.0 => ar,
        _ => r,
    })
}

impl Seed {
    /// Applies `Aⁿ` to ranks and degrees; `n < 0` uses `A⁻¹ = [[d, −1], [1, 0]]`.
    pub fn shift(&self, n: i64) -> Result<Seed> {
        let d = self.det();
        let mut r = (self.r_m1().clone(), self.r_0().clone());
        let mut g = (self.d_m1().clone(), self.d_0().clone());
        for _ in 0..n.unsigned_abs() {
            if n > 0 {
                r = step_forward(&d, &r);
                g = step_forward(&d, &g);
            } else {
                r = step_back(&d, &r);
                g = step_back(&d, &g);
            }
        }
        for (index, rank) in [(n - 1, &r.0), (n, &r.1)] {
            if !rank.is_positive() {
                return Err(Error::NonPositiveRank { index, rank: rank.clone() });
            }
        }
        Ok(Seed::from_parts_unchecked(r.0, r.1, g.0, g.1))
    }

    /// Tensoring by a degree-`a` line bundle: `d_i ↦ d_i + a·r_i`.
    pub fn twist(&self, a: &BigInt) -> Seed {
        Seed::from_parts_unchecked(
            self.r_m1().clone(),
            self.r_0().clone(),
            self.d_m1() + a * self.r_m1(),
            self.d_0() + a * self.r_0(),
        )
    }

    /// Dual helix with reversed order: `((r_0, r_-1), (−d_0, −d_-1))`.
    pub fn dual(&self) -> Seed {
        Seed::from_parts_unchecked(self.r_0().clone(), self.r_m1().clone(), -self.d_0(), -self.d_m1())
    }

    /// Shifts to the position where `r_0` is the minimum of the rank sequence.
    pub fn normalize(&self) -> Result<Normalized> {
        let d = self.det();
        if self.extendable() != ExtendVerdict::YesGeneric {
            return Err(match self.extendable() {
                ExtendVerdict::No(reason) => Error::NotExtendable(reason),
                _ => Error::NeedsGenericD { op: "normalize", d },
            });
        }
        let ranks = (self.r_m1().clone(), self.r_0().clone());
        let degrees = (self.d_m1().clone(), self.d_0().clone());
        let (r, g, n, alt) = walk_to_minimum(&d, ranks, degrees)?;
        let tie = alt.is_some();
        let (r, g, n) = match alt {
            Some((ar, ag, an)) if (&ar.0, &ag.0, &ag.1) < (&r.0, &g.0, &g.1) => (ar, ag, an),
            _ => (r, g, n),
        };
        Ok(Normalized { seed: Seed::from_parts_unchecked(r.0, r.1, g.0, g.1), shift: n, tie })
    }

    /// All shifts of the seed at which `r_0` is minimal (one or two).
    fn minimal_positions(&self) -> Result<Vec<(Seed, i64)>> {
        let d = self.det();
        let ranks = (self.r_m1().clone(), self.r_0().clone());
        let degrees = (self.d_m1().clone(), self.d_0().clone());
        let (r, g, n, alt) = walk_to_minimum(&d, ranks, degrees)?;
        let mut out = vec![(Seed::from_parts_unchecked(r.0, r.1, g.0, g.1), n)];
        if let Some((ar, ag, an)) = alt {
            out.push((Seed::from_parts_unchecked(ar.0, ar.1, ag.0, ag.1), an));
        }
        Ok(out)
    }
}

/// The rational `a` with `degrees(s2) = degrees(s1) + a·ranks`, when the ranks agree.
pub fn twist_between(s1: &Seed, s2: &Seed) -> Option<Rat> {
    if s1.ranks() != s2.ranks() {
        return None;
    }
    let a = Rat::new(s2.d_m1() - s1.d_m1(), s1.r_m1().clone()).ok()?;
    let expected = Rat::from_int(s1.d_0().clone()) + &a * &Rat::from_int(s1.r_0().clone());
    (expected == Rat::from_int(s2.d_0().clone())).then_some(a)
}

fn integer_twist_between(s1: &Seed, s2: &Seed) -> Option<BigInt> {
    if s1.ranks() != s2.ranks() {
        return None;
    }
    let (a, rem) = (s2.d_m1() - s1.d_m1()).div_rem(s1.r_m1());
    (rem.is_zero() && s1.d_0() + &a * s1.r_0() == *s2.d_0()).then_some(a)
}

fn compare_without_dual(s1: &Seed, s2: &Seed) -> Result<Equivalence> {
    let canon = s1.normalize()?;
    let mut ranks_seen = false;
    for (pos, k2) in s2.minimal_positions()? {
        if canon.seed.ranks() != pos.ranks() {
            continue;
        }
        ranks_seen = true;
        if let Some(a) = integer_twist_between(&canon.seed, &pos) {
            let witness = EquivWitness { shift: canon.shift - k2, twist: a, dual: false };
            return Ok(Equivalence::Same(witness));
        }
    }
    Ok(Equivalence::Distinct(if ranks_seen { DistinctReason::TwistCoset } else { DistinctReason::RankOrbits }))
}

/// Decides whether `s2` is a shift of an integer twist of `s1` (optionally of
/// its dual). The returned witness is checked against `s2` before returning.
pub fn same_numerical_class(s1: &Seed, s2: &Seed, allow_dual: bool) -> Result<Equivalence> {
    let (d1, d2) = (s1.det(), s2.det());
    if d1 != d2 {
        return Ok(Equivalence::Distinct(DistinctReason::HomDimensionMismatch { d1, d2 }));
    }
    let v1 = s1.require_extendable()?;
    s2.require_extendable()?;

    let outcome = if v1 == ExtendVerdict::Yes2 {
        // Every d = 2 helix is a twist of ((1,1),(0,2)).
        let twist = s2.d_m1() - s1.d_m1();
        Equivalence::Same(EquivWitness { shift: 0, twist, dual: false })
    } else {
        match compare_without_dual(s1, s2)? {
            Equivalence::Distinct(reason) if allow_dual => match compare_without_dual(&s1.dual(), s2)? {
                Equivalence::Same(w) => Equivalence::Same(EquivWitness { dual: true, ..w }),
                Equivalence::Distinct(_) => Equivalence::Distinct(reason),
            },
            other => other,
        }
    };

    if let Equivalence::Same(w) = &outcome {
        let image = w.apply(s1)?;
        if &image != s2 {
            return Err(Error::Invariant(format!("witness {w} maps {s1:?} to {image:?}, not {s2:?}")));
        }
    }
    Ok(outcome)
}

/// `(d, D)` of a seed as plain values, for callers comparing invariants.
pub fn invariants(seed: &Seed) -> (BigInt, BigInt) {
    (seed.det(), seed.big_d())
}

/// Inverse of a witness between non-dual seeds: `s2 → s1`.
pub fn invert_witness(w: &EquivWitness) -> Option<EquivWitness> {
    (!w.dual).then(|| EquivWitness { shift: -w.shift, twist: -&w.twist, dual: false })
}

/// Composition `w2 ∘ w1` of non-dual witnesses.
pub fn compose_witnesses(w1: &EquivWitness, w2: &EquivWitness) -> Option<EquivWitness> {
    (!w1.dual && !w2.dual).then(|| EquivWitness {
        shift: w1.shift + w2.shift,
        twist: &w1.twist + &w2.twist,
        dual: false,
    })
}
