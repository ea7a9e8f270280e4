use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DunklError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a root system: {0}")]
    NotARootSystem(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// Quadrature or series did not reach the requested accuracy.
    #[error("numeric accuracy not reached: {what} (residual estimate {residual:e})")]
    Accuracy { what: String, residual: f64 },

    #[error("argument out of supported range: {0}")]
    Range(String),

    /// An internal algebraic invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, DunklError>;

impl From<std::io::Error> for DunklError {
    fn from(e: std::io::Error) -> Self {
        DunklError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for DunklError {
    fn from(e: serde_json::Error) -> Self {
        DunklError::Parse(e.to_string())
    }
}
