//! Per-step timing of the converter, split by whether the step trained.

use std::fmt;
use std::time::Instant;

use npfree::{Converter, Series};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LatencyStats {
    pub count: usize,
    /// Seconds.
    pub mean: f64,
    /// Population standard deviation, seconds.
    pub std: f64,
}

impl LatencyStats {
    fn from_samples(samples: &[f64]) -> Self {
        if samples.is_empty() {
            return Self::default();
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
        Self {
            count: samples.len(),
            mean,
            std: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub name: String,
    pub n_points: usize,
    /// Emitted RMSE points (`n_points - 5`).
    pub n_emitted: usize,
    pub n_retrains: usize,
    /// `n_retrains / n_points`.
    pub retrain_ratio: f64,
    pub with_retrain: LatencyStats,
    pub without_retrain: LatencyStats,
}

impl BenchReport {
    pub const CSV_HEADER: &'static str = "series,n_points,n_emitted,n_retrains,retrain_ratio,\
        retrain_mean_s,retrain_std_s,no_retrain_mean_s,no_retrain_std_s";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.name,
            self.n_points,
            self.n_emitted,
            self.n_retrains,
            self.retrain_ratio,
            self.with_retrain.mean,
            self.with_retrain.std,
            self.without_retrain.mean,
            self.without_retrain.std
        )
    }

    /// Mean retrain latency over mean non-retrain latency.
    pub fn latency_ratio(&self) -> f64 {
        self.with_retrain.mean / self.without_retrain.mean
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "series            {}", self.name)?;
        writeln!(f, "points            {}", self.n_points)?;
        writeln!(
            f,
            "retrains          {} of {} ({:.2}%)",
            self.n_retrains,
            self.n_points,
            100.0 * self.retrain_ratio
        )?;
        writeln!(f, "{:<18}{:>8} {:>14} {:>14}", "step", "count", "mean (s)", "std (s)")?;
        for (label, s) in [("with retrain", &self.with_retrain), ("without retrain", &self.without_retrain)] {
            writeln!(f, "{:<18}{:>8} {:>14.6e} {:>14.6e}", label, s.count, s.mean, s.std)?;
        }
        Ok(())
    }
}

/// Converts `series` while timing every step that emits a point.
pub fn run_bench(series: &Series) -> Result<BenchReport> {
    let mut converter = Converter::new();
    let mut retrain = Vec::new();
    let mut plain = Vec::new();
    for &v in series.values() {
        let start = Instant::now();
        let point = converter.step(v)?;
        let elapsed = start.elapsed().as_secs_f64();
        match point {
            Some(p) if p.retrained => retrain.push(elapsed),
            Some(_) => plain.push(elapsed),
            None => {}
        }
    }
    let n_retrains = retrain.len();
    Ok(BenchReport {
        name: series.name().to_owned(),
        n_points: series.len(),
        n_emitted: retrain.len() + plain.len(),
        n_retrains,
        retrain_ratio: n_retrains as f64 / series.len() as f64,
        with_retrain: LatencyStats::from_samples(&retrain),
        without_retrain: LatencyStats::from_samples(&plain),
    })
}
