//! Command-line front end.

pub mod commands;
pub mod format;
pub mod problem;

use std::fmt;

use lmx_core::Error;

/// Exit status for a run whose checks all passed or were skipped.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed or unsuitable input.
    Input(String),
    /// The numerics could not proceed.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::EigenSolver { .. }
            | Error::Defective { .. }
            | Error::GammaPole { .. }
            | Error::Singular { .. }
            | Error::NotPositiveStable { .. } => CliError::Numerical(msg),
            _ => CliError::Input(msg),
        }
    }
}
