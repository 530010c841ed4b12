use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const NUMERICAL: i32 = 2;
    pub const USAGE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed record: {0}")]
    Record(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Measure(#[from] monocone::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Measure(monocone::Error::NegativeDiscord(_)) => exit::NUMERICAL,
            _ => exit::USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
