//! Exact arithmetic over the Gaussian rationals ℚ(i): scalars, univariate and
//! bivariate polynomials, resultants and distinct-root counting.

mod bipoly;
pub mod expr;
mod gaussian;
mod poly;
mod roots;
pub mod series;

pub use bipoly::{bareiss_determinant, distinct_root_count, eval_family, resultant, BiPolynomial, Var};
pub use gaussian::GaussianRational;
pub use poly::{order, poly_gcd, Polynomial};
pub use roots::rational_roots;
