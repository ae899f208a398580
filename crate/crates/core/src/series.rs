//! Series containers, distances and the experiment generators.

use crate::error::{Error, Result};
use crate::npfree::RmsePoint;
use crate::scalar::Scalar;

/// A finite, non-empty univariate series.
///
/// Timestamps are carried through I/O untouched; none of the math reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    name: String,
    values: Vec<T>,
    timestamps: Option<Vec<String>>,
}

impl<T: Scalar> TimeSeries<T> {
    pub fn new(name: impl Into<String>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput {
                index,
                value: values[index].as_f64(),
            });
        }
        Ok(Self {
            name: name.into(),
            values,
            timestamps: None,
        })
    }

    pub fn with_timestamps(mut self, timestamps: Vec<String>) -> Result<Self> {
        if timestamps.len() != self.values.len() {
            return Err(Error::LengthMismatch {
                left: timestamps.len(),
                right: self.values.len(),
            });
        }
        self.timestamps = Some(timestamps);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn timestamps(&self) -> Option<&[String]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn map_values(&self, name: String, f: impl Fn(T) -> T) -> Self {
        Self {
            name,
            values: self.values.iter().map(|&v| f(v)).collect(),
            timestamps: self.timestamps.clone(),
        }
    }
}

/// The RMSE representation of one series.
#[derive(Debug, Clone, PartialEq)]
pub struct RmseSeries<T> {
    source_name: String,
    points: Vec<RmsePoint<T>>,
}

impl<T: Scalar> RmseSeries<T> {
    pub fn new(source_name: impl Into<String>, points: Vec<RmsePoint<T>>) -> Self {
        Self {
            source_name: source_name.into(),
            points,
        }
    }

    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn points(&self) -> &[RmsePoint<T>] {
        &self.points
    }

    pub fn values(&self) -> Vec<T> {
        self.points.iter().map(|p| p.rmse).collect()
    }

    pub fn retrain_count(&self) -> usize {
        self.points.iter().filter(|p| p.retrained).count()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Positional Euclidean distance between the RMSE values of two
    /// representations. Retrain flags are ignored.
    pub fn distance(&self, other: &Self) -> Result<T> {
        euclidean_distance(&self.values(), &other.values())
    }
}

/// Euclidean distance between two equal-length sequences.
pub fn euclidean_distance<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt())
}

/// Rescales to zero mean and unit population standard deviation.
pub fn znormalize<T: Scalar>(series: &TimeSeries<T>) -> Result<TimeSeries<T>> {
    let n = series.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    let count = T::lit(n as f64);
    let mean = series.values.iter().copied().sum::<T>() / count;
    let var = series
        .values
        .iter()
        .map(|&v| (v - mean) * (v - mean))
        .sum::<T>()
        / count;
    let sigma = var.sqrt();
    if sigma == T::zero() {
        return Err(Error::ZeroVariance);
    }
    Ok(series.map_values(format!("{}-znorm", series.name), |v| (v - mean) / sigma))
}

/// Every value shifted by `offset`; the name gains a `+offset` suffix.
pub fn offset_variant<T: Scalar>(series: &TimeSeries<T>, offset: T) -> TimeSeries<T> {
    let name = if offset < T::zero() {
        format!("{}{}", series.name, offset)
    } else {
        format!("{}+{}", series.name, offset)
    };
    series.map_values(name, |v| v + offset)
}

/// Every value negated, so a peak becomes a trough. The order is unchanged.
pub fn reverse_variant<T: Scalar>(series: &TimeSeries<T>) -> TimeSeries<T> {
    series.map_values(format!("{}-reverse", series.name), |v| -v)
}

pub const DEFAULT_SINE_LEN: usize = 4032;
pub const DEFAULT_SINE_PERIOD: usize = 288;
pub const DEFAULT_SINE_AMPLITUDE: f64 = 20.0;

/// `amplitude * sin(2 pi k / period)` for `k` in `0..n`.
pub fn sine_series<T: Scalar>(n: usize, period: usize, amplitude: T) -> Result<TimeSeries<T>> {
    if n == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    if period < 2 {
        return Err(Error::InvalidArgument(format!(
            "sine period must be at least 2, got {period}"
        )));
    }
    let step = std::f64::consts::TAU / period as f64;
    let values = (0..n)
        .map(|k| amplitude * T::lit((step * k as f64).sin()))
        .collect();
    TimeSeries::new(format!("sine-p{period}"), values)
}
