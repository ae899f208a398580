//! Synthetic stand-ins for the benchmark series, which are not shipped with
//! the repository. Each one is deterministic and has the same length and
//! broad character as the series it is named after.

#![allow(dead_code)]

use std::f64::consts::TAU;

use npfree::rng::SplitMix64;
use npfree::Series;

fn gauss(r: &mut SplitMix64) -> f64 {
    let u1 = r.next_f64().max(1e-300);
    let u2 = r.next_f64();
    (-2.0f64 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// Database CPU utilization: a noisy level that moves every few hundred
/// points, with rare bursts.
pub fn b3b_like() -> Series {
    let mut r = SplitMix64::new(7);
    let mut level = 15.0;
    let values = (0..4032)
        .map(|k| {
            if k % 500 == 250 {
                level = (level + 8.0 * gauss(&mut r)).clamp(5.0, 60.0);
            }
            let burst = if r.next_f64() < 0.003 { 30.0 } else { 0.0 };
            level + 1.5 * gauss(&mut r) + burst
        })
        .collect();
    Series::new("B3B", values).unwrap()
}

/// Server CPU utilization: low baseline, slow drift and short plateaus.
pub fn cc2_like() -> Series {
    let mut r = SplitMix64::new(13);
    let mut drift = 0.0;
    let mut plateau = 0usize;
    let values = (0..4032)
        .map(|_| {
            drift = (drift + 0.05 * gauss(&mut r)).clamp(-3.0, 3.0);
            if plateau == 0 && r.next_f64() < 0.004 {
                plateau = 20 + (r.next_u64() % 40) as usize;
            }
            let bump = if plateau > 0 {
                plateau -= 1;
                25.0
            } else {
                0.0
            };
            8.0 + drift + 0.6 * gauss(&mut r) + bump
        })
        .collect();
    Series::new("CC2", values).unwrap()
}

/// Artificial daily square wave with small noise, 288 points per day.
pub fn adsn_like() -> Series {
    let mut r = SplitMix64::new(9);
    let values = (0..4032)
        .map(|k| {
            let base = if (100..200).contains(&(k % 288)) { 80.0 } else { 20.0 };
            base + 0.5 * gauss(&mut r)
        })
        .collect();
    Series::new("ADSN", values).unwrap()
}

/// Hourly pedestrian counts: two daily peaks, quieter weekends.
pub fn bsms_like() -> Series {
    let mut r = SplitMix64::new(17);
    let values = (0..4368)
        .map(|k| {
            let hour = (k % 24) as f64;
            let weekend = (k / 24) % 7 >= 5;
            let peak = |c: f64, w: f64| (-(hour - c).powi(2) / (2.0 * w * w)).exp();
            let shape = if weekend {
                900.0 * peak(14.0, 3.0)
            } else {
                1200.0 * peak(8.5, 1.2) + 1500.0 * peak(17.5, 1.5) + 500.0 * peak(12.5, 2.0)
            };
            (60.0 + shape + 40.0 * gauss(&mut r)).max(0.0)
        })
        .collect();
    Series::new("BSMS", values).unwrap()
}

/// Trend plus a daily sine plus noise.
pub fn mix_like() -> Series {
    let mut r = SplitMix64::new(11);
    let values = (0..4032)
        .map(|k| 50.0 + 0.005 * k as f64 + 10.0 * (TAU * k as f64 / 288.0).sin() + gauss(&mut r))
        .collect();
    Series::new("mix", values).unwrap()
}

pub fn benchmark_series() -> Vec<Series> {
    vec![b3b_like(), cc2_like(), adsn_like(), bsms_like()]
}

/// Uniform noise around a random walk.
pub fn random_series(n: usize, seed: u64) -> Series {
    let mut r = SplitMix64::new(seed);
    let mut level = 100.0;
    let values = (0..n)
        .map(|_| {
            level += r.symmetric(3.0);
            level + r.symmetric(5.0)
        })
        .collect();
    Series::new(format!("random{seed}"), values).unwrap()
}

/// One value per line, the stream format.
pub fn to_csv(series: &Series) -> String {
    series.values().iter().map(|v| format!("{v}\n")).collect()
}
