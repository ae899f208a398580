use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at row {row}: cannot read {field:?} as a finite number")]
    Parse { row: u64, field: String },

    #[error("input has no data rows")]
    EmptyFile,

    #[error("length mismatch: {left} vs {right} rows")]
    LengthMismatch { left: usize, right: usize },

    #[error("series too short: {len} points, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o: {0}")]
    Io(#[from] io::Error),

    #[error(transparent)]
    Core(npfree::Error),

    #[error("{0}")]
    Usage(String),
}

impl From<npfree::Error> for CliError {
    fn from(e: npfree::Error) -> Self {
        match e {
            npfree::Error::LengthMismatch { left, right } => CliError::LengthMismatch { left, right },
            npfree::Error::TooShort { len, min } => CliError::TooShort { len, min },
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::LengthMismatch { .. } => 3,
            CliError::TooShort { .. } => 4,
            CliError::EmptyFile => 5,
            CliError::Io(_) | CliError::Csv(_) => 6,
            CliError::Usage(_) => 64,
            CliError::Core(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
