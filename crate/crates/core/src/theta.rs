//! The negative limit slope θ = lim_{n→−∞} d_n/r_n.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{ArithError, QuadNum, Rat};
use crate::error::Result;
use crate::seed::{ExtendVerdict, Seed};
use crate::spectral::disc_radicand;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Theta {
    /// The `d = 2` case: slopes decrease without bound.
    NegInfinity,
    Finite(QuadNum),
}

impl Theta {
    pub fn finite(&self) -> Option<&QuadNum> {
        match self {
            Theta::Finite(q) => Some(q),
            Theta::NegInfinity => None,
        }
    }
}

/// Closed-form θ for a seed with `D ≠ 0`, irrespective of extendability:
///
/// ```text
///      2(r₀d₀ + d₋₁r₋₁) − d(r₀d₋₁ + d₀r₋₁)          d
/// θ = ──────────────────────────────────── + ──────────────────── √(d²−4)
///          2(r₀² + r₋₁² − d·r₀r₋₁)            2(r₀² + r₋₁² − d·r₀r₋₁)
/// ```
pub fn theta_formula(seed: &Seed) -> Result<QuadNum> {
    let d = seed.det();
    let (r_m1, r_0) = seed.ranks();
    let (d_m1, d_0) = seed.degrees();
    let denom: BigInt = 2 * (r_0 * r_0 + r_m1 * r_m1 - &d * r_0 * r_m1);
    let numer: BigInt = 2 * (r_0 * d_0 + d_m1 * r_m1) - &d * (r_0 * d_m1 + d_0 * r_m1);
    let a = Rat::new(numer, denom.clone())?;
    let b = Rat::new(d.clone(), denom)?;
    Ok(QuadNum::new(a, b, disc_radicand(&d)?))
}

impl Seed {
    /// Negative limit slope; defined for extendable seeds only.
    pub fn theta(&self) -> Result<Theta> {
        match self.require_extendable()? {
            ExtendVerdict::Yes2 => Ok(Theta::NegInfinity),
            _ => Ok(Theta::Finite(theta_formula(self)?)),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::NegInfinity => f.write_str("-inf"),
            Theta::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Theta({self})")
    }
}

impl FromStr for Theta {
    type Err = ArithError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "-inf" | "-infinity" | "-∞" => Ok(Theta::NegInfinity),
            other => other.parse().map(Theta::Finite),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThetaJson {
    NegInfinity { neg_infinity: bool },
    Finite(QuadNum),
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Theta::NegInfinity => ThetaJson::NegInfinity { neg_infinity: true }.serialize(s),
            Theta::Finite(q) => q.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ThetaJson::deserialize(d)? {
            ThetaJson::NegInfinity { neg_infinity: true } => Ok(Theta::NegInfinity),
            ThetaJson::NegInfinity { neg_infinity: false } => {
                Err(serde::de::Error::custom("\"neg_infinity\" must be true when present"))
            }
            ThetaJson::Finite(q) => Ok(Theta::Finite(q)),
        }
    }
}
