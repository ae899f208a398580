//! A single-layer LSTM with a linear readout, written out by hand.
//!
//! The network is deliberately tiny: one scalar input, [`HIDDEN_UNITS`] hidden
//! units and one scalar output. A model is trained on a 3-point window
//! `(w0, w1, w2)` as a teacher-forced next-step task: inputs `(w0, w1)`,
//! targets `(w1, w2)`, squared error summed over both steps. Prediction runs
//! the full window from a zero state and reads out the last step.
//!
//! All of this happens with the window measured from its newest value, i.e.
//! on `(w0 - w2, w1 - w2, 0)`, and the prediction is shifted back by `w2`.
//! Values are never rescaled, and a constant offset on the series cancels
//! out, so shifted copies of a series get the same predictions up to
//! rounding.
//!
//! Training always starts from [`init_model`] with [`RANDOM_SEED`] and runs a
//! fixed number of plain gradient-descent epochs, so `train` is a pure
//! function of its window.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::params::{EPOCHS, HIDDEN_UNITS, LEARNING_RATE, LOOK_BACK, RANDOM_SEED};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;

const H: usize = HIDDEN_UNITS;

/// Gate order used by every per-gate array.
pub const GATE_INPUT: usize = 0;
pub const GATE_FORGET: usize = 1;
pub const GATE_CELL: usize = 2;
pub const GATE_OUTPUT: usize = 3;
pub const GATES: usize = 4;

/// Total number of scalar parameters.
pub const PARAMETER_COUNT: usize = GATES * (H + H * H + H) + H + 1;

/// Three consecutive observations in time order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingWindow<T>([T; LOOK_BACK]);

impl<T: Scalar> TrainingWindow<T> {
    pub fn new(values: [T; LOOK_BACK]) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput {
                index,
                value: values[index].as_f64(),
            });
        }
        Ok(Self(values))
    }

    pub fn from_slice(values: &[T]) -> Result<Self> {
        let arr: [T; LOOK_BACK] = values.try_into().map_err(|_| Error::LengthMismatch {
            left: values.len(),
            right: LOOK_BACK,
        })?;
        Self::new(arr)
    }

    pub fn values(&self) -> [T; LOOK_BACK] {
        self.0
    }

    /// The window measured from its newest value: `(w0 - w2, w1 - w2, 0)`.
    pub fn anchored(&self) -> [T; LOOK_BACK] {
        let [a, b, c] = self.0;
        [a - c, b - c, T::zero()]
    }
}

/// Every weight and bias of the network.
///
/// `recurrent[g][j][k]` is the weight from unit `k` at the previous step into
/// unit `j` of gate `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameters<T> {
    pub input: [[T; H]; GATES],
    pub recurrent: [[[T; H]; H]; GATES],
    pub bias: [[T; H]; GATES],
    pub readout: [T; H],
    pub readout_bias: T,
}

impl<T: Scalar> Parameters<T> {
    pub fn zeros() -> Self {
        let z = T::zero();
        Self {
            input: [[z; H]; GATES],
            recurrent: [[[z; H]; H]; GATES],
            bias: [[z; H]; GATES],
            readout: [z; H],
            readout_bias: z,
        }
    }

    /// Flattened view in a fixed order: per gate input, recurrent (row major)
    /// and bias, then readout weights and readout bias.
    pub fn to_vec(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(PARAMETER_COUNT);
        for g in 0..GATES {
            out.extend_from_slice(&self.input[g]);
            for row in &self.recurrent[g] {
                out.extend_from_slice(row);
            }
            out.extend_from_slice(&self.bias[g]);
        }
        out.extend_from_slice(&self.readout);
        out.push(self.readout_bias);
        out
    }

    pub fn from_slice(flat: &[T]) -> Result<Self> {
        if flat.len() != PARAMETER_COUNT {
            return Err(Error::LengthMismatch {
                left: flat.len(),
                right: PARAMETER_COUNT,
            });
        }
        let mut p = Self::zeros();
        let mut it = flat.iter().copied();
        let mut next = || it.next().expect("length checked");
        for g in 0..GATES {
            for v in p.input[g].iter_mut() {
                *v = next();
            }
            for row in p.recurrent[g].iter_mut() {
                for v in row.iter_mut() {
                    *v = next();
                }
            }
            for v in p.bias[g].iter_mut() {
                *v = next();
            }
        }
        for v in p.readout.iter_mut() {
            *v = next();
        }
        p.readout_bias = next();
        Ok(p)
    }

    pub fn is_finite(&self) -> bool {
        self.to_vec().iter().all(|v| v.is_finite())
    }

    fn for_each_pair(&mut self, other: &Self, mut f: impl FnMut(&mut T, T)) {
        for g in 0..GATES {
            for j in 0..H {
                f(&mut self.input[g][j], other.input[g][j]);
                f(&mut self.bias[g][j], other.bias[g][j]);
                for k in 0..H {
                    f(&mut self.recurrent[g][j][k], other.recurrent[g][j][k]);
                }
            }
        }
        for j in 0..H {
            f(&mut self.readout[j], other.readout[j]);
        }
        f(&mut self.readout_bias, other.readout_bias);
    }
}

/// A trained (or freshly initialized) network.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmModel<T> {
    params: Parameters<T>,
}

/// Loss gradient with respect to every parameter of an [`LstmModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients<T> {
    params: Parameters<T>,
}

impl<T: Scalar> Gradients<T> {
    pub fn parameters(&self) -> &Parameters<T> {
        &self.params
    }
}

/// Forward quantities of one time step, kept for backpropagation.
#[derive(Debug, Clone)]
struct StepCache<T> {
    x: T,
    h_prev: [T; H],
    c_prev: [T; H],
    /// Activated gates in [`GATE_INPUT`]..[`GATE_OUTPUT`] order.
    act: [[T; H]; GATES],
    tanh_c: [T; H],
    h: [T; H],
    c: [T; H],
    y: T,
}

#[inline]
fn sigmoid<T: Scalar>(z: T) -> T {
    T::one() / (T::one() + (-z).exp())
}

/// Builds the initial network for `seed`.
///
/// Weights are Xavier-uniform draws from SplitMix64: gate input weights use
/// fan-in plus fan-out 1 + 10, recurrent weights 10 + 10 and readout weights
/// 10 + 1. Draw order is per gate (input weights then recurrent rows), then
/// the readout. All biases start at zero.
pub fn init_model<T: Scalar>(seed: u64) -> LstmModel<T> {
    let mut rng = SplitMix64::new(seed);
    let input_bound = (6.0 / (1 + H) as f64).sqrt();
    let recurrent_bound = (6.0 / (H + H) as f64).sqrt();
    let readout_bound = (6.0 / (H + 1) as f64).sqrt();

    let mut params = Parameters::zeros();
    for g in 0..GATES {
        for w in params.input[g].iter_mut() {
            *w = T::lit(rng.symmetric(input_bound));
        }
        for row in params.recurrent[g].iter_mut() {
            for w in row.iter_mut() {
                *w = T::lit(rng.symmetric(recurrent_bound));
            }
        }
    }
    for w in params.readout.iter_mut() {
        *w = T::lit(rng.symmetric(readout_bound));
    }
    LstmModel { params }
}

impl<T: Scalar> LstmModel<T> {
    pub fn from_parameters(params: Parameters<T>) -> Self {
        Self { params }
    }

    /// The all-zero network. Its readout is identically zero, so it predicts
    /// the newest window value unchanged.
    pub fn zeros() -> Self {
        Self::from_parameters(Parameters::zeros())
    }

    pub fn parameters(&self) -> &Parameters<T> {
        &self.params
    }

    pub fn is_finite(&self) -> bool {
        self.params.is_finite()
    }

    fn cell(&self, x: T, h_prev: [T; H], c_prev: [T; H]) -> StepCache<T> {
        let p = &self.params;
        let mut act = [[T::zero(); H]; GATES];
        for g in 0..GATES {
            for j in 0..H {
                let mut z = p.input[g][j] * x + p.bias[g][j];
                for k in 0..H {
                    z = z + p.recurrent[g][j][k] * h_prev[k];
                }
                act[g][j] = if g == GATE_CELL { z.tanh() } else { sigmoid(z) };
            }
        }
        let mut c = [T::zero(); H];
        let mut tanh_c = [T::zero(); H];
        let mut h = [T::zero(); H];
        let mut y = p.readout_bias;
        for j in 0..H {
            c[j] = act[GATE_FORGET][j] * c_prev[j] + act[GATE_INPUT][j] * act[GATE_CELL][j];
            tanh_c[j] = c[j].tanh();
            h[j] = act[GATE_OUTPUT][j] * tanh_c[j];
            y = y + p.readout[j] * h[j];
        }
        StepCache {
            x,
            h_prev,
            c_prev,
            act,
            tanh_c,
            h,
            c,
            y,
        }
    }

    fn unroll(&self, inputs: &[T]) -> Vec<StepCache<T>> {
        let mut h = [T::zero(); H];
        let mut c = [T::zero(); H];
        let mut out = Vec::with_capacity(inputs.len());
        for &x in inputs {
            let step = self.cell(x, h, c);
            h = step.h;
            c = step.c;
            out.push(step);
        }
        out
    }

    /// One-step-ahead prediction: the value expected right after `window`.
    pub fn predict(&self, window: &TrainingWindow<T>) -> T {
        let [_, _, newest] = window.0;
        let steps = self.unroll(&window.anchored());
        newest + steps.last().map(|s| s.y).unwrap_or_else(T::zero)
    }

    /// Teacher-forced training loss on `window`.
    pub fn loss(&self, window: &TrainingWindow<T>) -> T {
        let [a, b, c] = window.anchored();
        let steps = self.unroll(&[a, b]);
        let e0 = steps[0].y - b;
        let e1 = steps[1].y - c;
        e0 * e0 + e1 * e1
    }

    /// Analytic backpropagation-through-time gradient of [`Self::loss`].
    pub fn gradients(&self, window: &TrainingWindow<T>) -> Gradients<T> {
        let [a, b, c] = window.anchored();
        let steps = self.unroll(&[a, b]);
        let targets = [b, c];
        let p = &self.params;
        let two = T::lit(2.0);

        let mut grad = Parameters::zeros();
        let mut dh_next = [T::zero(); H];
        let mut dc_next = [T::zero(); H];

        for (s, step) in steps.iter().enumerate().rev() {
            let dy = two * (step.y - targets[s]);
            grad.readout_bias = grad.readout_bias + dy;

            let mut dz = [[T::zero(); H]; GATES];
            let mut dc_prev = [T::zero(); H];
            for j in 0..H {
                grad.readout[j] = grad.readout[j] + dy * step.h[j];
                let dh = dy * p.readout[j] + dh_next[j];

                let i = step.act[GATE_INPUT][j];
                let f = step.act[GATE_FORGET][j];
                let g = step.act[GATE_CELL][j];
                let o = step.act[GATE_OUTPUT][j];
                let tc = step.tanh_c[j];

                let dc = dh * o * (T::one() - tc * tc) + dc_next[j];
                dz[GATE_OUTPUT][j] = dh * tc * o * (T::one() - o);
                dz[GATE_INPUT][j] = dc * g * i * (T::one() - i);
                dz[GATE_FORGET][j] = dc * step.c_prev[j] * f * (T::one() - f);
                dz[GATE_CELL][j] = dc * i * (T::one() - g * g);
                dc_prev[j] = dc * f;
            }

            let mut dh_prev = [T::zero(); H];
            for gate in 0..GATES {
                for j in 0..H {
                    let d = dz[gate][j];
                    grad.input[gate][j] = grad.input[gate][j] + d * step.x;
                    grad.bias[gate][j] = grad.bias[gate][j] + d;
                    for k in 0..H {
                        grad.recurrent[gate][j][k] =
                            grad.recurrent[gate][j][k] + d * step.h_prev[k];
                        dh_prev[k] = dh_prev[k] + p.recurrent[gate][j][k] * d;
                    }
                }
            }
            dh_next = dh_prev;
            dc_next = dc_prev;
        }

        Gradients { params: grad }
    }

    fn descend(&mut self, grad: &Gradients<T>, rate: T) {
        self.params
            .for_each_pair(&grad.params, |w, g| *w = *w - rate * g);
    }
}

/// Trains a fresh network on `window` with the fixed schedule.
pub fn train<T: Scalar>(window: &TrainingWindow<T>) -> LstmModel<T> {
    let mut model = init_model(RANDOM_SEED);
    let rate = T::lit(LEARNING_RATE);
    for _ in 0..EPOCHS {
        let grad = model.gradients(window);
        model.descend(&grad, rate);
    }
    model
}
