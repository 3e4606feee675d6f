//! Exact scalars (rationals and prime fields) and dense linear algebra.

mod field;
mod matrix;

pub use field::{is_prime, Field, Scalar};
pub use matrix::Matrix;
