//! The diagonal form `(d−2)x² − (d+2)y² = 4D` and its Pell associate, used to
//! cross-check rank solutions.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::big_d;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagSolution {
    #[serde(with = "crate::json::bigint")]
    pub x: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub y: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
    #[serde(rename = "D", with = "crate::json::bigint")]
    pub big_d: BigInt,
}

impl DiagSolution {
    pub fn holds(&self) -> bool {
        let d = &self.d;
        (d - 2) * &self.x * &self.x - (d + 2) * &self.y * &self.y == 4 * &self.big_d
    }
}

/// `X² − 4(d²−4)Y² = −64(d²−4)(d−2)D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(rename = "X", with = "crate::json::bigint")]
    pub big_x: BigInt,
    #[serde(rename = "Y", with = "crate::json::bigint")]
    pub big_y: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
    #[serde(rename = "D", with = "crate::json::bigint")]
    pub big_d: BigInt,
}

impl PellSolution {
    pub fn holds(&self) -> bool {
        let n = &self.d * &self.d - 4;
        &self.big_x * &self.big_x - 4 * &n * &self.big_y * &self.big_y == -64 * &n * (&self.d - 2) * &self.big_d
    }
}

/// `(x, y) = (r_-1 + r_0, r_0 − r_-1)`.
pub fn to_diag(r_m1: &BigInt, r_0: &BigInt, d: &BigInt) -> Result<DiagSolution> {
    let big_d_val = big_d(r_m1, r_0, d);
    if !big_d_val.is_positive() {
        return Err(Error::Domain(format!("D({r_m1}, {r_0}) = {big_d_val} at d = {d} is not positive")));
    }
    let s = DiagSolution { x: r_m1 + r_0, y: r_0 - r_m1, d: d.clone(), big_d: big_d_val };
    if !s.holds() {
        return Err(Error::Invariant(format!("diagonal form fails for {s:?}")));
    }
    Ok(s)
}

/// `X = 4(d²−4)·y`, `Y = 2(d−2)·x`.
pub fn to_pell(s: &DiagSolution) -> Result<PellSolution> {
    let d = &s.d;
    let p = PellSolution {
        big_x: 4 * (d * d - 4) * &s.y,
        big_y: 2 * (d - 2) * &s.x,
        d: d.clone(),
        big_d: s.big_d.clone(),
    };
    if !p.holds() {
        return Err(Error::Invariant(format!("Pell form fails for {p:?}")));
    }
    Ok(p)
}
