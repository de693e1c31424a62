//! Exact numerics of two-periodic elliptic helices.
//!
//! A helix is encoded by its numerical seed, the ranks and degrees of two
//! consecutive bundles. Everything else (the recurrence, the invariants `d`,
//! `D` and `θ`, numerical classes, ampleness, Hom-dimension tables) is derived
//! from it in exact integer or quadratic-field arithmetic.

pub mod ampleness;
pub mod arith;
pub mod classify;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod json;
pub mod ops;
pub mod quadform;
pub mod seed;
pub mod spectral;
pub mod theta;

pub use arith::{ArithError, QuadNum, Rat};
pub use error::{Error, Result};
pub use ops::{same_numerical_class, EquivWitness, Equivalence};
pub use seed::{ExtendVerdict, RejectReason, Seed, Term};
pub use theta::Theta;
