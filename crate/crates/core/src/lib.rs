//! Exact computations around tight and solid closure of homogeneous
//! `R_+`-primary ideals in `K[x,y,z]/(F)`, for `K` the rationals or a prime field.

pub mod cohomology;
pub mod config;
pub mod decide;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod ring;
pub mod slope;
pub mod syzygy;

pub use config::{IdealConfig, OutputFormat, RingConfig, Session, SessionOptions};
pub use decide::{BatchReport, BatchSummary, DecideOptions, Decision, Verdict};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
pub use ring::{GradedRing, Monomial, Polynomial};
pub use slope::{BoundsReport, SemistabilityStatus, Validity};
pub use syzygy::{IdealData, RelationVector};
