mod beta;
mod dense;
mod functions;
mod spectral;

pub(crate) use beta::require_positive_stable;
pub use beta::{beta_matrix, beta_matrix_with, BETA_LEVEL};
pub use dense::{commute_residual, ComplexMatrix};
pub use functions::*;
pub use spectral::{
    is_positive_stable, spectral_summary, spectral_summary_with, EigenDecomposition,
    SpectralSummary,
};
