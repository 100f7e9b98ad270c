//! Matrix-parameter Lauricella and triple hypergeometric functions: series
//! evaluation, integral representations and PDE-system verification.

// `!(a <= b)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod matrix;
pub mod pde;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod series;
pub mod special;
pub mod tolerances;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use tolerances::Tolerances;
