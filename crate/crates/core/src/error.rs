use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::NumericHealth`] to exit status 2 and everything
/// else to exit status 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric health: {0}")]
    NumericHealth(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("format error in {path}: {msg}")]
    Format { path: PathBuf, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn format(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        Error::Format { path: path.into(), msg: msg.into() }
    }

    pub fn is_numeric_health(&self) -> bool {
        matches!(self, Error::NumericHealth(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
