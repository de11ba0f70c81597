use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("convention failure: {0}")]
    Convention(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Core(grassmann_core::Error),
}

impl From<grassmann_core::Error> for VerifyError {
    fn from(e: grassmann_core::Error) -> Self {
        match e {
            grassmann_core::Error::ConventionFailure(msg) => VerifyError::Convention(msg),
            other => VerifyError::Core(other),
        }
    }
}

impl VerifyError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Usage(_) | VerifyError::Core(_) => 2,
            VerifyError::Convention(_) => 3,
            VerifyError::Io { .. } | VerifyError::Json { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, VerifyError>;
