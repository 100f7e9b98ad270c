use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has order 0")]
    Empty,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("eigen-solver failed to converge for {name}")]
    EigenSolver { name: String },

    #[error(
        "{name} is defective or nearly so (eigenvector condition {eigcond:.3e} exceeds cap {cap:.1e}); perturb the parameters"
    )]
    Defective {
        name: String,
        eigcond: f64,
        cap: f64,
    },

    #[error("{name} has eigenvalue {eigenvalue} at a pole of the gamma function")]
    GammaPole { name: String, eigenvalue: Complex64 },

    #[error("singular matrix: {context}")]
    Singular { context: String },

    #[error("{name} is not positive stable (beta = {beta})")]
    NotPositiveStable { name: String, beta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("missing parameter {role} for {function}")]
    MissingRole { function: String, role: String },

    #[error("unknown function id {given:?}; valid ids: {valid}")]
    UnknownFunction { given: String, valid: String },

    #[error("unknown parameter role {0:?}")]
    UnknownRole(String),

    #[error("hypothesis violated: {condition} (residual {residual:.3e})")]
    Hypothesis { condition: String, residual: f64 },

    #[error("point outside the admissible domain: {condition}")]
    Domain { condition: String },

    #[error("no integral representation for {function}: {reason}")]
    NoRepresentation { function: String, reason: String },
}
