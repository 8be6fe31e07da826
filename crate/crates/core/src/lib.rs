//! Exact computation in groups of finitary piecewise-linear homeomorphisms
//! of the real line.
//!
//! Everything here is computed in exact arithmetic: scalars are
//! arbitrary-precision rationals, optionally extended by a single quadratic
//! irrationality `√d`.  No floating point enters any decision.
//!
//! The main objects are:
//!
//! * [`scalar::Scalar`] — the exact ordered field underlying all coordinates;
//! * [`plmap::PLMap`] — canonical finitary PL self-homeomorphisms of ℝ,
//!   affine outside a bounded interval, with their endpoint germs and slope
//!   homomorphisms;
//! * [`slopegroup`] — multiplicative slope groups, exponent vectors, integer
//!   lattices, unit-group criteria and GL(2,ℤ) orbit equivalence;
//! * [`group::FGGroup`] — finitely generated PL groups with ambient interval,
//!   slope group and breakpoint module, ball enumeration and character
//!   machinery;
//! * [`twisted`] — twisted-conjugacy action and class-separating invariants;
//! * [`sigma1`] — Cayley-graph ball explorer for character submonoids.

pub mod construct;
pub mod error;
pub mod group;
pub mod plmap;
pub mod scalar;
pub mod sigma1;
pub mod slopegroup;
pub mod twisted;

pub use error::Error;
pub use plmap::{AffineGerm, Interval, PLMap};
pub use scalar::Scalar;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
