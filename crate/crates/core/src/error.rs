use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the function being evaluated.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A constructor or operation was called with inconsistent arguments.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two grids that must agree do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A function value is NaN or infinite where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// An iterative solver failed to converge; carries the last bracket.
    #[error("{func} did not converge after {iterations} iterations (bracket [{lo:e}, {hi:e}])")]
    NoConvergence {
        func: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    /// A symbol violates the integrability conditions of its class.
    #[error("symbol not admissible ({condition}): {detail}")]
    Integrability {
        condition: IntegrabilityCondition,
        detail: String,
    },

    /// Malformed symbol or density specification.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// I/O or file-format failure.
    #[error("{0}")]
    Io(String),
}

/// Which integrability condition a vertical symbol failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrabilityCondition {
    /// `a(y) y^λ` must be integrable near `y = 0`.
    NearZero,
    /// `a(y) e^{-εy}` must be integrable at infinity for every `ε > 0`.
    Tail,
}

impl std::fmt::Display for IntegrabilityCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntegrabilityCondition::NearZero => f.write_str("near-0"),
            IntegrabilityCondition::Tail => f.write_str("tail"),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
