//! Error types shared across the crate.

use thiserror::Error;

/// All failures produced by the library.
///
/// Each variant maps to one of the machine-parseable categories the CLI
/// prints on exit: `parse`, `validation`, `structural`, `io`.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed.
    #[error("{0}")]
    Parse(String),

    /// Input parsed but violates a documented precondition.
    #[error("{0}")]
    Validation(String),

    /// An internal structural invariant was violated mid-run.
    #[error("{0}")]
    Structural(String),

    /// Underlying I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short category tag used in CLI error lines.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Validation(_) => "validation",
            Error::Structural(_) => "structural",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
