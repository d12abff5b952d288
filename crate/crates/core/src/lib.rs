//! Exact local invariants of parametrized curve-germ singularities and
//! classification of one-parameter families of curves.
//!
//! Everything is computed over the Gaussian rationals ℚ(i) without rounding.
//! Curves are given by polynomial parametrizations of their branches.

pub mod algebra;
pub mod curvegerm;
pub mod family;
pub mod hypersurface;
pub mod local_invariants;
pub mod projection;
mod error;

pub use error::{Error, ProjectionCheck};
