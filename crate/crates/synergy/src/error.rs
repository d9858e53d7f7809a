//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced anywhere in the crate.
///
/// `Undefined` is special: it marks a metric that has no value on the given
/// input (zero median, singular denominator, ...) rather than a broken input.
/// Grid outputs render it as an `undefined:<reason>` status cell instead of
/// failing the point.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty series")]
    EmptySeries,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("insufficient span: {0}")]
    InsufficientSpan(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: {msg}")]
    Malformed {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("missing series files: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingSeries(Vec<PathBuf>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Shorthand for the `Undefined` marker.
    pub fn undefined(reason: impl Into<String>) -> Self {
        Error::Undefined(reason.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
