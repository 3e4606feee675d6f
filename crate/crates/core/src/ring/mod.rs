pub mod expr;
mod graded;
mod monomial;
mod polynomial;

pub use graded::{binomial_nonneg, CurveInvariants, DegreeBasis, GradedRing};
pub(crate) use graded::is_power_of;
pub use monomial::Monomial;
pub use polynomial::{PolyDisplay, Polynomial};
