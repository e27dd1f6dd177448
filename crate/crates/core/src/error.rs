use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A rate, frequency or temperature outside its allowed range.
    #[error("invalid value for `{field}`: {reason}")]
    Validation { field: String, reason: String },

    /// Inputs that are individually valid but do not form a supported model.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular system: smallest pivot {pivot:.3e} (condition estimate {condition:.3e})")]
    Singular { pivot: f64, condition: f64 },

    #[error("no half-maximum crossing in scan window: {0}")]
    Window(String),

    #[error("time-domain integration did not converge: {0}")]
    Convergence(String),

    #[error("model too stiff for fixed-step integration: {0}")]
    Stiff(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors that come from the numerics rather than from user input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. } | Error::Window(_) | Error::Convergence(_) | Error::Stiff(_)
        )
    }
}
