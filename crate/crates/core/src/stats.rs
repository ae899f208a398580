//! Three-sigma threshold statistics.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Mean, population standard deviation and `mean + 3 * sigma` over a run of
/// error values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdStats<T> {
    pub mean: T,
    pub sigma: T,
    pub threshold: T,
    /// How many error values the statistics were computed from.
    pub samples: usize,
}

/// Computes [`ThresholdStats`] over `values` with two passes.
pub fn three_sigma<T, I>(values: I) -> Result<ThresholdStats<T>>
where
    T: Scalar,
    I: IntoIterator<Item = T>,
    I::IntoIter: Clone,
{
    let iter = values.into_iter();
    let (count, sum) = iter
        .clone()
        .fold((0usize, T::zero()), |(n, s), v| (n + 1, s + v));
    if count == 0 {
        return Err(Error::EmptyHistory);
    }
    let n = T::lit(count as f64);
    let mean = sum / n;
    let var = iter.map(|v| (v - mean) * (v - mean)).sum::<T>() / n;
    let sigma = var.sqrt();
    Ok(ThresholdStats {
        mean,
        sigma,
        threshold: mean + T::lit(3.0) * sigma,
        samples: count,
    })
}
