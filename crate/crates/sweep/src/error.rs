use std::path::PathBuf;

use ecd_core::EcdError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config: {0}")]
    Config(String),

    #[error("grid point {param}: {source}")]
    Point {
        param: f64,
        #[source]
        source: EcdError,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },

    #[error("worker pool: {0}")]
    Pool(String),
}

impl SweepError {
    pub fn config(msg: impl Into<String>) -> Self {
        SweepError::Config(msg.into())
    }

    /// Process exit status: 1 for configuration errors, 2 for everything at
    /// run time.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = SweepError> = std::result::Result<T, E>;
