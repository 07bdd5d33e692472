use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative or adaptive method stopped before meeting its tolerance.
    #[error("{method} did not converge (residual estimate {residual:e})")]
    NonConvergence { method: &'static str, residual: f64 },

    /// A construction has no admissible solution for the given parameters.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A precondition on a composite input (table, profile, certificate) failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
