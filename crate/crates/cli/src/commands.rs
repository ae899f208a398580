//! The `convert`, `detect` and `compare` subcommands as library calls.

use std::io::{Read, Write};

use npfree::npfree::MIN_CONVERT_LEN;
use npfree::{euclidean_distance, Converter, Detector};

use crate::error::{CliError, Result};
use crate::io::{write_point, write_verdict, RecordReader, RMSE_HEADER, VERDICT_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunSummary {
    pub inputs: usize,
    pub rows: usize,
    pub retrains: usize,
    pub anomalies: usize,
}

/// Streams `input` through the converter, writing one row per emitted point.
///
/// With `flush_each` set every row is flushed before the next input record is
/// read, which is what makes piped use real-time.
pub fn run_convert<R: Read, W: Write>(input: R, mut output: W, flush_each: bool) -> Result<RunSummary> {
    let mut records = RecordReader::new(input);
    let mut converter = Converter::new();
    let mut summary = RunSummary::default();
    writeln!(output, "{RMSE_HEADER}")?;
    if flush_each {
        output.flush()?;
    }
    while let Some(rec) = records.next_record()? {
        summary.inputs += 1;
        if let Some(p) = converter.step(rec.value)? {
            write_point(&mut output, &p)?;
            summary.rows += 1;
            summary.retrains += usize::from(p.retrained);
            if flush_each {
                output.flush()?;
            }
        }
    }
    output.flush()?;
    if summary.inputs == 0 {
        return Err(CliError::EmptyFile);
    }
    if summary.inputs < MIN_CONVERT_LEN {
        return Err(CliError::TooShort {
            len: summary.inputs,
            min: MIN_CONVERT_LEN,
        });
    }
    Ok(summary)
}

/// Streams `input` through the detector, writing one row per verdict.
pub fn run_detect<R: Read, W: Write>(input: R, mut output: W, flush_each: bool) -> Result<RunSummary> {
    let mut records = RecordReader::new(input);
    let mut detector = Detector::new();
    let mut summary = RunSummary::default();
    writeln!(output, "{VERDICT_HEADER}")?;
    if flush_each {
        output.flush()?;
    }
    while let Some(rec) = records.next_record()? {
        summary.inputs += 1;
        if let Some(v) = detector.step(rec.value)? {
            write_verdict(&mut output, &v)?;
            summary.rows += 1;
            summary.retrains += usize::from(v.retrained);
            summary.anomalies += usize::from(v.anomalous);
            if flush_each {
                output.flush()?;
            }
        }
    }
    output.flush()?;
    if summary.inputs == 0 {
        return Err(CliError::EmptyFile);
    }
    Ok(summary)
}

/// Euclidean distance between the RMSE columns of two converter outputs.
pub fn run_compare(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(CliError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(euclidean_distance(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(n: usize) -> String {
        (0..n).map(|i| format!("{}\n", 10.0 + (i as f64 * 0.4).sin())).collect()
    }

    #[test]
    fn convert_writes_one_row_per_point() {
        let mut out = Vec::new();
        let s = run_convert(lines(20).as_bytes(), &mut out, false).unwrap();
        assert_eq!((s.inputs, s.rows), (20, 15));
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 16);
        assert!(text.starts_with("t,rmse,retrained\n5,"));
    }

    #[test]
    fn convert_rejects_short_input() {
        let err = run_convert(lines(5).as_bytes(), Vec::new(), false).unwrap_err();
        assert!(matches!(err, CliError::TooShort { len: 5, min: 6 }));
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn detect_needs_eight_points_for_a_verdict() {
        let mut out = Vec::new();
        let s = run_detect(lines(7).as_bytes(), &mut out, false).unwrap();
        assert_eq!(s.rows, 0);
        assert_eq!(String::from_utf8(out).unwrap(), "t,aare,thd,anomalous,retrained\n");
    }

    #[test]
    fn compare_checks_lengths() {
        assert_eq!(run_compare(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        let err = run_compare(&[1.0], &[1.0, 2.0]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
