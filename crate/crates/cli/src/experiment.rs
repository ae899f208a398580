//! Experiment drivers: offset variants, opposite patterns and the
//! z-normalization collapse.

use std::path::Path;
use std::thread;

use npfree::{
    convert, euclidean_distance, offset_variant, reverse_variant, sine_series, znormalize,
    Representation, Series,
};

use crate::error::Result;
use crate::io::write_rmse_file;

/// Offsets applied to build the similar-shape variants.
pub const VARIANT_OFFSETS: [f64; 12] = [
    100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0, 900.0, 1000.0, 1500.0, 2000.0,
];

/// Offsets used for the similar pair when measuring separation.
pub const SIMILAR_OFFSETS: [f64; 2] = [100.0, 1000.0];

/// Converts every series on its own thread; output order follows input order.
pub fn convert_all(series: &[Series]) -> Result<Vec<Representation>> {
    thread::scope(|scope| {
        let handles: Vec<_> = series
            .iter()
            .map(|s| scope.spawn(move || convert(s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("conversion thread panicked").map_err(Into::into))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantDistance {
    pub variant: String,
    pub distance: f64,
}

/// Distance from the representation of `base` to that of each offset variant.
pub fn offsets(base: &Series, out_dir: Option<&Path>) -> Result<Vec<VariantDistance>> {
    let mut all = vec![base.clone()];
    all.extend(VARIANT_OFFSETS.iter().map(|&c| offset_variant(base, c)));
    let reps = convert_all(&all)?;
    if let Some(dir) = out_dir {
        for rep in &reps {
            write_rmse_file(&dir.join(format!("{}.rmse.csv", rep.source_name())), rep.points())?;
        }
    }
    let base_rep = &reps[0];
    reps[1..]
        .iter()
        .map(|r| {
            Ok(VariantDistance {
                variant: r.source_name().to_owned(),
                distance: base_rep.distance(r)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Separation {
    pub name: String,
    /// Distance to each shifted copy, paired with the offset.
    pub similar: Vec<(f64, f64)>,
    /// Distance to the negated series.
    pub opposite: f64,
}

impl Separation {
    pub fn worst_similar(&self) -> f64 {
        self.similar.iter().map(|&(_, d)| d).fold(0.0, f64::max)
    }

    /// Opposite-pattern distance over the largest similar-pair distance.
    pub fn ratio(&self) -> f64 {
        self.opposite / self.worst_similar()
    }
}

/// Compares `series` with its shifted copies and with its negation.
pub fn separation(series: &Series) -> Result<Separation> {
    let mut all = vec![series.clone(), reverse_variant(series)];
    all.extend(SIMILAR_OFFSETS.iter().map(|&c| offset_variant(series, c)));
    let reps = convert_all(&all)?;
    let opposite = reps[0].distance(&reps[1])?;
    let similar = SIMILAR_OFFSETS
        .iter()
        .zip(&reps[2..])
        .map(|(&c, r)| Ok((c, reps[0].distance(r)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Separation {
        name: series.name().to_owned(),
        similar,
        opposite,
    })
}

pub fn sine(n: usize, period: usize, amplitude: f64) -> Result<Separation> {
    separation(&sine_series(n, period, amplitude)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZnormDemo {
    pub original: Series,
    pub affine: Series,
    pub scale: f64,
    pub shift: f64,
    pub z_original: Series,
    pub z_affine: Series,
    /// Euclidean distance between the raw series.
    pub raw_distance: f64,
    /// Largest elementwise gap after z-normalization.
    pub max_z_gap: f64,
}

pub const DEMO_SCALE: f64 = 3.0;
pub const DEMO_SHIFT: f64 = 50.0;

/// Z-normalizes `series` and `scale * series + shift` side by side.
pub fn znorm_demo(series: &Series) -> Result<ZnormDemo> {
    let affine = Series::new(
        format!("{}*{DEMO_SCALE}+{DEMO_SHIFT}", series.name()),
        series.values().iter().map(|v| DEMO_SCALE * v + DEMO_SHIFT).collect(),
    )?;
    let z_original = znormalize(series)?;
    let z_affine = znormalize(&affine)?;
    let max_z_gap = z_original
        .values()
        .iter()
        .zip(z_affine.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(ZnormDemo {
        raw_distance: euclidean_distance(series.values(), affine.values())?,
        original: series.clone(),
        affine,
        scale: DEMO_SCALE,
        shift: DEMO_SHIFT,
        z_original,
        z_affine,
        max_z_gap,
    })
}

/// Built-in input for the demo when no file is given: a short ramp with a
/// bump.
pub fn demo_series() -> Series {
    let values = (0..24)
        .map(|k| {
            let x = k as f64;
            0.5 * x + 4.0 * (-(x - 12.0).powi(2) / 8.0).exp()
        })
        .collect();
    Series::new("demo", values).expect("finite demo values")
}
