use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::ArithError;
use crate::seed::RejectReason;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),

    #[error("ranks must be positive, got r_-1 = {r_m1}, r_0 = {r_0}")]
    NonPositiveSeedRank { r_m1: BigInt, r_0: BigInt },

    #[error("shift produced nonpositive rank r_{index} = {rank}; the seed does not extend to a helix")]
    NonPositiveRank { index: i64, rank: BigInt },

    #[error("seed does not extend to a helix ({0:?})")]
    NotExtendable(RejectReason),

    #[error("{op} requires hom dimension d > 2, got d = {d}")]
    NeedsGenericD { op: &'static str, d: BigInt },

    #[error("window bounds reversed: [{0}, {1}]")]
    EmptyWindow(i64, i64),

    #[error("no helix exists for d = {d} and this θ: {why}")]
    NoHelixForTheta { d: BigInt, why: String },

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
