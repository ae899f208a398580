//! The real-time anomaly detector the converter is built from.
//!
//! Same state machine as [`crate::npfree`], but the error is the average
//! absolute relative error (AARE) and the threshold is computed over the
//! whole AARE history. That history grows by one value per step for the life
//! of the stream.

use crate::engine::{Engine, ErrorMeasure, StepTrace, FIRST_THRESHOLD_T};
use crate::error::{Error, Result};
use crate::lstm::LstmModel;
use crate::scalar::Scalar;
use crate::series::TimeSeries;
use crate::stats::{three_sigma, ThresholdStats};

/// Verdict for one step `t >= 7`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionVerdict<T> {
    pub t: u64,
    pub aare: T,
    pub threshold: T,
    pub anomalous: bool,
    pub retrained: bool,
}

/// Mean of `|v - v_hat| / |v|` over three aligned points.
///
/// A zero observation makes the relative error undefined and is reported as
/// [`Error::ZeroDenominator`]. `t` is only used for that error.
pub fn compute_aare<T: Scalar>(t: u64, observed: [T; 3], predicted: [T; 3]) -> Result<T> {
    let mut sum = T::zero();
    for (&v, &p) in observed.iter().zip(&predicted) {
        if v == T::zero() {
            return Err(Error::ZeroDenominator { t });
        }
        sum = sum + (v - p).abs() / v.abs();
    }
    Ok(sum / T::lit(3.0))
}

/// Three-sigma statistics over the complete AARE history.
pub fn compute_aare_threshold<T: Scalar>(history: &[T]) -> Result<ThresholdStats<T>> {
    three_sigma(history.iter().copied())
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Aare;

impl<T: Scalar> ErrorMeasure<T> for Aare {
    fn measure(t: u64, observed: [T; 3], predicted: [T; 3]) -> Result<T> {
        compute_aare(t, observed, predicted)
    }
}

/// Detector state for one stream.
#[derive(Debug, Clone)]
pub struct RePad<T: Scalar> {
    engine: Engine<T, Aare>,
}

impl<T: Scalar> Default for RePad<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> RePad<T> {
    pub fn new() -> Self {
        Self {
            engine: Engine::new(None),
        }
    }

    pub fn t(&self) -> u64 {
        self.engine.t()
    }

    pub fn flag(&self) -> bool {
        self.engine.flag()
    }

    pub fn model(&self) -> Option<&LstmModel<T>> {
        self.engine.model()
    }

    pub fn aare_history(&self) -> Vec<T> {
        self.engine.history().collect()
    }

    pub fn history_len(&self) -> usize {
        self.engine.history().len()
    }

    /// Consumes the next value; verdicts start after the preparation period.
    pub fn step(&mut self, value: T) -> Result<Option<DetectionVerdict<T>>> {
        Ok(self.step_traced(value)?.and_then(|s| {
            let stats = s.stats?;
            debug_assert!(s.t >= FIRST_THRESHOLD_T);
            Some(DetectionVerdict {
                t: s.t,
                aare: s.error,
                threshold: stats.threshold,
                anomalous: s.exceeded,
                retrained: s.retrained,
            })
        }))
    }

    pub fn step_traced(&mut self, value: T) -> Result<Option<StepTrace<T>>> {
        self.engine.step(value)
    }
}

/// Runs the detector over a complete series.
pub fn detect<T: Scalar>(series: &TimeSeries<T>) -> Result<Vec<DetectionVerdict<T>>> {
    let mut detector = RePad::new();
    let mut out = Vec::new();
    for &v in series.values() {
        if let Some(verdict) = detector.step(v)? {
            out.push(verdict);
        }
    }
    Ok(out)
}
