//! Real-time, normalization-free representation of open-ended time series.
//!
//! Each incoming value is predicted from the three before it by a small LSTM.
//! The root-mean-square error of the last three predictions becomes the
//! representation value for that step. A model is retrained only when the
//! error jumps above a three-sigma threshold over a sliding window of recent
//! errors. All hyperparameters are fixed, so equal inputs always give equal
//! outputs.
//!
//! The same machinery with a relative error and an unbounded threshold
//! history is the [`RePad`] anomaly detector.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix it to `f64`.

pub mod error;
pub mod lstm;
pub mod npfree;
pub mod params;
pub mod repad;
pub mod rng;
pub mod scalar;
pub mod series;
pub mod stats;

mod engine;

pub use engine::StepTrace;
pub use error::{Error, Result};
pub use lstm::{init_model, train, Gradients, LstmModel, Parameters, TrainingWindow};
pub use npfree::{compute_rmse, compute_threshold, convert, NpFree, RmsePoint};
pub use params::Hyperparameters;
pub use repad::{compute_aare, compute_aare_threshold, detect, DetectionVerdict, RePad};
pub use scalar::Scalar;
pub use series::{
    euclidean_distance, offset_variant, reverse_variant, sine_series, znormalize, RmseSeries,
    TimeSeries,
};
pub use stats::{three_sigma, ThresholdStats};

pub type Converter = NpFree<f64>;
pub type Detector = RePad<f64>;
pub type Model = LstmModel<f64>;
pub type Window = TrainingWindow<f64>;
pub type Series = TimeSeries<f64>;
pub type Representation = RmseSeries<f64>;
pub type Point = RmsePoint<f64>;
pub type Verdict = DetectionVerdict<f64>;
pub type Stats = ThresholdStats<f64>;
