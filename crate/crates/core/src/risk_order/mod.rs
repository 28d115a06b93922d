//! Deciding whether one utility table is less risk-averse than another.
//!
//! Three routes answer the same question and must agree on every input:
//!
//! * [`check_lra_definition`] quantifies over all lotteries, reduced to a
//!   finite scan of two-point supports.
//! * [`check_lra_pratt`] checks ordinal agreement plus the compression
//!   inequality on every `u`-ordered triple.
//! * [`build_transform`] tries to construct an increasing convex
//!   piecewise-linear `φ` with `u = φ ∘ v`.
//!
//! [`check_lra_grid`] is a brute-force oracle over a rational lottery grid.

mod definition;
mod grid;
mod pratt;
mod transform;
mod verdict;

pub use definition::check_lra_definition;
pub use grid::check_lra_grid;
pub use pratt::{check_compression, check_lra_pratt, check_ordinal_equivalence};
pub use transform::{
    apply_transform, build_transform, check_lra_transform, PLTransform, TransformError,
};
pub use verdict::{LraWitness, Part, RiskOrderVerdict, Route};

use thiserror::Error;

use crate::table::DomainMismatch;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiskOrderError {
    #[error(transparent)]
    DomainMismatch(#[from] DomainMismatch),
    /// `u(x) < u(y)` but `v(x) = v(y)`: the compression ratio is undefined,
    /// which means ordinal equivalence already fails.
    #[error("compression ratio undefined on ({x}, {y}, {z}): v({x}) = v({y})")]
    DegenerateDenominator { x: String, y: String, z: String },
}
