use thiserror::Error;

/// Errors raised by the converter, the detector and the series utilities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input value {value} at index {index}")]
    NonFiniteInput { index: usize, value: f64 },

    #[error("threshold requested over an empty history")]
    EmptyHistory,

    #[error("zero observed value at time {t}: relative error is undefined")]
    ZeroDenominator { t: u64 },

    #[error("series too short: {len} points, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series has zero variance")]
    ZeroVariance,

    #[error("missing prediction for time {t}")]
    OutOfOrder { t: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
