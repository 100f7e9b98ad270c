//! Bilateral matrix PDE systems and their verification against the series.

mod necessity;
mod residual;
mod terms;

pub use necessity::{
    necessity_outcomes, necessity_probe, violating_spec, ProbeOptions, ProbeOutcome,
};
pub use residual::{
    coefficient_residual, coefficient_sweep, first_nonzero, pointwise_residual, PointwiseResidual,
    SweepResult,
};
pub use terms::{
    equation_count, equation_terms, format_terms, system_terms, variable_names, OperatorTerm,
    PdeSystemId,
};
