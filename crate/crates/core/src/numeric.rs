//! Exact-or-float scalars, dense matrices, determinants and linear solves.

mod linalg;
mod matrix;
pub(crate) mod scalar;

pub use linalg::{determinant, inverse, linear_solve, linear_solve_with_tol, DEFAULT_PIVOT_TOL};
pub use matrix::Matrix;
pub use scalar::{parse_rational, rat, Rational, Scalar};
