//! The streaming converter: raw values in, one RMSE value per step out.
//!
//! Output starts at `t = 5` and is produced on every branch of the state
//! machine, so an `N`-point series yields exactly `max(0, N - 5)` points. The
//! threshold uses at most the [`SLIDING_WINDOW`] most recent RMSE values,
//! which bounds memory for open-ended input.

use crate::engine::{Engine, ErrorMeasure, StepTrace, FIRST_ERROR_T};
use crate::error::{Error, Result};
use crate::lstm::LstmModel;
use crate::params::SLIDING_WINDOW;
use crate::scalar::Scalar;
use crate::series::{RmseSeries, TimeSeries};
use crate::stats::{three_sigma, ThresholdStats};

/// Minimum series length that produces any output.
pub const MIN_CONVERT_LEN: usize = FIRST_ERROR_T as usize + 1;

/// One value of the RMSE representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmsePoint<T> {
    pub t: u64,
    pub rmse: T,
    pub retrained: bool,
}

/// Root-mean-square error between three observations and their predictions,
/// aligned by index.
#[cfg(not(feature = "literal-rmse"))]
pub fn compute_rmse<T: Scalar>(observed: [T; 3], predicted: [T; 3]) -> Result<T> {
    check_finite(&observed)?;
    check_finite(&predicted)?;
    let sum: T = observed
        .iter()
        .zip(&predicted)
        .map(|(&d, &p)| (d - p) * (d - p))
        .sum();
    Ok((sum / T::lit(3.0)).sqrt())
}

/// Root-mean-square error of all three observations against the newest
/// prediction only.
#[cfg(feature = "literal-rmse")]
pub fn compute_rmse<T: Scalar>(observed: [T; 3], predicted: [T; 3]) -> Result<T> {
    check_finite(&observed)?;
    check_finite(&predicted)?;
    let p = predicted[2];
    let sum: T = observed.iter().map(|&d| (d - p) * (d - p)).sum();
    Ok((sum / T::lit(3.0)).sqrt())
}

fn check_finite<T: Scalar>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFiniteInput {
            index,
            value: values[index].as_f64(),
        }),
        None => Ok(()),
    }
}

/// Three-sigma statistics over the last `window` values of `history`
/// (or all of them when there are fewer).
pub fn compute_threshold<T: Scalar>(history: &[T], window: usize) -> Result<ThresholdStats<T>> {
    let start = history.len().saturating_sub(window);
    three_sigma(history[start..].iter().copied())
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rmse;

impl<T: Scalar> ErrorMeasure<T> for Rmse {
    fn measure(_t: u64, observed: [T; 3], predicted: [T; 3]) -> Result<T> {
        compute_rmse(observed, predicted)
    }
}

/// Converter state for one stream.
#[derive(Debug, Clone)]
pub struct NpFree<T: Scalar> {
    engine: Engine<T, Rmse>,
}

impl<T: Scalar> Default for NpFree<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> NpFree<T> {
    pub fn new() -> Self {
        Self {
            engine: Engine::new(Some(SLIDING_WINDOW)),
        }
    }

    /// Index the next value will get.
    pub fn t(&self) -> u64 {
        self.engine.t()
    }

    pub fn flag(&self) -> bool {
        self.engine.flag()
    }

    pub fn model(&self) -> Option<&LstmModel<T>> {
        self.engine.model()
    }

    /// Retained RMSE history, oldest first. Never longer than the window.
    pub fn rmse_history(&self) -> Vec<T> {
        self.engine.history().collect()
    }

    pub fn history_len(&self) -> usize {
        self.engine.history().len()
    }

    pub fn step(&mut self, value: T) -> Result<Option<RmsePoint<T>>> {
        Ok(self.step_traced(value)?.map(|s| RmsePoint {
            t: s.t,
            rmse: s.error,
            retrained: s.retrained,
        }))
    }

    /// Like [`Self::step`] but also reports the threshold statistics used.
    pub fn step_traced(&mut self, value: T) -> Result<Option<StepTrace<T>>> {
        self.engine.step(value)
    }
}

/// Converts a complete series in one go.
pub fn convert<T: Scalar>(series: &TimeSeries<T>) -> Result<RmseSeries<T>> {
    if series.len() < MIN_CONVERT_LEN {
        return Err(Error::TooShort {
            len: series.len(),
            min: MIN_CONVERT_LEN,
        });
    }
    let mut converter = NpFree::new();
    let mut points = Vec::with_capacity(series.len() - FIRST_ERROR_T as usize);
    for &v in series.values() {
        if let Some(p) = converter.step(v)? {
            points.push(p);
        }
    }
    Ok(RmseSeries::new(series.name(), points))
}
