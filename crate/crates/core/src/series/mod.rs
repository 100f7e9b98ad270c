//! Matrix hypergeometric series: definitions, coefficients, summation and
//! convergence conditions.

mod coefficients;
mod convergence;
mod evaluate;
mod expr;
mod function;
mod hyper0f1;
mod hypotheses;
mod index;

pub use coefficients::{term_coefficient, Coefficients};
pub use convergence::{convergence_report, ConvergenceReport, Guarantee, Inequality};
pub use evaluate::{evaluate, evaluate_with, ConvergenceFlag, SeriesValue, TruncationPolicy};
pub use expr::{LinComb, MatExpr};
pub use function::{Factor, FunctionId, FunctionSpec, Role};
pub use hyper0f1::{hyper0f1, Hyper0F1};
pub use hypotheses::{
    check_hypotheses, pde_hypotheses, validate_parameters, validate_parameters_with, Hypothesis,
    Violation,
};
pub use index::{indices_up_to, shell, MultiIndex};
