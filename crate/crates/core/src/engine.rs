//! The predict / measure / retrain state machine shared by the converter and
//! the detector.
//!
//! Both algorithms run the same phases over a time index `t` starting at 0:
//!
//! * `t < 2`: collect.
//! * `2 <= t < 5`: train on the last three points, predict the next one.
//! * `5 <= t < 7`: measure the error of the last three predictions, then train
//!   and predict as above.
//! * `t >= 7`: measure, compare against the three-sigma threshold and retrain
//!   on `d[t-3..t]` when the error is too large. A retrained model that still
//!   misses clears the flag, and while the flag is clear every step trains a
//!   candidate that only replaces the current model once it fits again.
//!
//! The two instantiations differ in the error measure and in how much error
//! history feeds the threshold. A step either completes and commits, or fails
//! and leaves the state as it was.

use std::collections::VecDeque;
use std::iter;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::lstm::{train, LstmModel, TrainingWindow};
use crate::params::LOOK_BACK;
use crate::scalar::Scalar;
use crate::stats::{three_sigma, ThresholdStats};

/// First index with an error value.
pub(crate) const FIRST_ERROR_T: u64 = 2 * LOOK_BACK as u64 - 1;
/// First index with a threshold.
pub(crate) const FIRST_THRESHOLD_T: u64 = 2 * LOOK_BACK as u64 + 1;

/// Per-step prediction error between three observations and their predictions.
pub(crate) trait ErrorMeasure<T: Scalar> {
    fn measure(t: u64, observed: [T; 3], predicted: [T; 3]) -> Result<T>;
}

/// What happened at one step `t >= 5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTrace<T> {
    pub t: u64,
    /// The error for this step, after any retraining.
    pub error: T,
    /// Threshold statistics, from `t = 7` on.
    pub stats: Option<ThresholdStats<T>>,
    /// A model was trained during this step.
    pub retrained: bool,
    /// The final error was above the threshold.
    pub exceeded: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Engine<T, M> {
    t: u64,
    flag: bool,
    model: Option<LstmModel<T>>,
    /// Last `LOOK_BACK + 1` observations, oldest first.
    raw: VecDeque<T>,
    /// Predictions keyed by the index they predict.
    preds: VecDeque<(u64, T)>,
    history: VecDeque<T>,
    window: Option<usize>,
    _measure: PhantomData<M>,
}

impl<T: Scalar, M: ErrorMeasure<T>> Engine<T, M> {
    /// `window` caps the error history feeding the threshold; `None` keeps all.
    pub(crate) fn new(window: Option<usize>) -> Self {
        Self {
            t: 0,
            flag: true,
            model: None,
            raw: VecDeque::with_capacity(LOOK_BACK + 2),
            preds: VecDeque::with_capacity(LOOK_BACK + 2),
            history: VecDeque::new(),
            window,
            _measure: PhantomData,
        }
    }

    pub(crate) fn t(&self) -> u64 {
        self.t
    }

    pub(crate) fn flag(&self) -> bool {
        self.flag
    }

    pub(crate) fn model(&self) -> Option<&LstmModel<T>> {
        self.model.as_ref()
    }

    pub(crate) fn history(&self) -> impl ExactSizeIterator<Item = T> + '_ {
        self.history.iter().copied()
    }

    /// Observation at absolute index `z`, given the tail ending at `t`.
    fn observed(raw: &VecDeque<T>, t: u64, z: u64) -> T {
        raw[raw.len() - 1 - (t - z) as usize]
    }

    /// The `LOOK_BACK` observations ending at index `end`.
    fn window_ending(raw: &VecDeque<T>, t: u64, end: u64) -> Result<TrainingWindow<T>> {
        TrainingWindow::new([
            Self::observed(raw, t, end - 2),
            Self::observed(raw, t, end - 1),
            Self::observed(raw, t, end),
        ])
    }

    fn prediction(&self, z: u64, current: Option<(u64, T)>) -> Result<T> {
        if let Some((i, v)) = current {
            if i == z {
                return Ok(v);
            }
        }
        self.preds
            .iter()
            .find(|(i, _)| *i == z)
            .map(|(_, v)| *v)
            .ok_or(Error::OutOfOrder { t: z })
    }

    fn error_at(&self, raw: &VecDeque<T>, t: u64, current: Option<(u64, T)>) -> Result<T> {
        let observed = [
            Self::observed(raw, t, t - 2),
            Self::observed(raw, t, t - 1),
            Self::observed(raw, t, t),
        ];
        let predicted = [
            self.prediction(t - 2, current)?,
            self.prediction(t - 1, current)?,
            self.prediction(t, current)?,
        ];
        M::measure(t, observed, predicted)
    }

    /// Threshold over the retained history plus `candidate` as the newest value.
    fn stats_with(&self, candidate: T) -> ThresholdStats<T> {
        let keep = match self.window {
            Some(w) => self.history.len().min(w.saturating_sub(1)),
            None => self.history.len(),
        };
        let skip = self.history.len() - keep;
        three_sigma(
            self.history
                .iter()
                .skip(skip)
                .copied()
                .chain(iter::once(candidate)),
        )
        .expect("history plus candidate is never empty")
    }

    fn current_model(&self) -> Result<&LstmModel<T>> {
        self.model.as_ref().ok_or(Error::OutOfOrder { t: self.t })
    }

    /// Consumes the next observation.
    pub(crate) fn step(&mut self, value: T) -> Result<Option<StepTrace<T>>> {
        if !value.is_finite() {
            return Err(Error::NonFiniteInput {
                index: self.t as usize,
                value: value.as_f64(),
            });
        }
        let t = self.t;
        let mut raw = self.raw.clone();
        raw.push_back(value);
        if raw.len() > LOOK_BACK + 1 {
            raw.pop_front();
        }

        let outcome = if t < LOOK_BACK as u64 - 1 {
            Outcome::quiet()
        } else if t < FIRST_ERROR_T {
            let window = Self::window_ending(&raw, t, t)?;
            let model = train(&window);
            let next = model.predict(&window);
            Outcome {
                model: Some(model),
                prediction: Some((t + 1, next)),
                ..Outcome::quiet()
            }
        } else if t < FIRST_THRESHOLD_T {
            let error = self.error_at(&raw, t, None)?;
            let window = Self::window_ending(&raw, t, t)?;
            let model = train(&window);
            let next = model.predict(&window);
            Outcome {
                model: Some(model),
                prediction: Some((t + 1, next)),
                error: Some(error),
                trace: Some(StepTrace {
                    t,
                    error,
                    stats: None,
                    retrained: true,
                    exceeded: false,
                }),
                flag: self.flag,
            }
        } else if self.flag {
            self.step_trusted(&raw, t)?
        } else {
            self.step_untrusted(&raw, t)?
        };

        self.commit(raw, outcome)
    }

    /// Flag set: predict with the current model, retrain once if needed.
    fn step_trusted(&self, raw: &VecDeque<T>, t: u64) -> Result<Outcome<T>> {
        let previous = Self::window_ending(raw, t, t - 1)?;
        let current = if t == FIRST_THRESHOLD_T {
            (t, self.prediction(t, None)?)
        } else {
            (t, self.current_model()?.predict(&previous))
        };
        let error = self.error_at(raw, t, Some(current))?;
        let stats = self.stats_with(error);
        if error <= stats.threshold {
            return Ok(Outcome {
                prediction: Some(current),
                error: Some(error),
                trace: Some(StepTrace {
                    t,
                    error,
                    stats: Some(stats),
                    retrained: false,
                    exceeded: false,
                }),
                ..Outcome::keep(self.flag)
            });
        }

        // The retrained model only supplies the replacement prediction; the
        // current model stays in place.
        let candidate = train(&previous);
        let current = (t, candidate.predict(&previous));
        let error = self.error_at(raw, t, Some(current))?;
        let stats = self.stats_with(error);
        let exceeded = error > stats.threshold;
        Ok(Outcome {
            model: None,
            prediction: Some(current),
            error: Some(error),
            trace: Some(StepTrace {
                t,
                error,
                stats: Some(stats),
                retrained: true,
                exceeded,
            }),
            flag: !exceeded,
        })
    }

    /// Flag clear: train a candidate and adopt it once it fits.
    fn step_untrusted(&self, raw: &VecDeque<T>, t: u64) -> Result<Outcome<T>> {
        let previous = Self::window_ending(raw, t, t - 1)?;
        let candidate = train(&previous);
        let current = (t, candidate.predict(&previous));
        let error = self.error_at(raw, t, Some(current))?;
        let stats = self.stats_with(error);
        let exceeded = error > stats.threshold;
        Ok(Outcome {
            model: (!exceeded).then_some(candidate),
            prediction: Some(current),
            error: Some(error),
            trace: Some(StepTrace {
                t,
                error,
                stats: Some(stats),
                retrained: true,
                exceeded,
            }),
            flag: !exceeded,
        })
    }

    fn commit(&mut self, raw: VecDeque<T>, outcome: Outcome<T>) -> Result<Option<StepTrace<T>>> {
        self.raw = raw;
        if let Some(model) = outcome.model {
            self.model = Some(model);
        }
        if let Some((z, v)) = outcome.prediction {
            match self.preds.iter_mut().find(|(i, _)| *i == z) {
                Some(slot) => slot.1 = v,
                None => self.preds.push_back((z, v)),
            }
            while self.preds.len() > LOOK_BACK + 1 {
                self.preds.pop_front();
            }
        }
        if let Some(error) = outcome.error {
            self.history.push_back(error);
            if let Some(w) = self.window {
                while self.history.len() > w {
                    self.history.pop_front();
                }
            }
        }
        self.flag = outcome.flag;
        self.t += 1;
        Ok(outcome.trace)
    }
}

/// Pending state changes of one step.
struct Outcome<T> {
    model: Option<LstmModel<T>>,
    prediction: Option<(u64, T)>,
    error: Option<T>,
    trace: Option<StepTrace<T>>,
    flag: bool,
}

impl<T> Outcome<T> {
    fn quiet() -> Self {
        Self::keep(true)
    }

    fn keep(flag: bool) -> Self {
        Self {
            model: None,
            prediction: None,
            error: None,
            trace: None,
            flag,
        }
    }
}
