//! CSV ingestion and the output formats.
//!
//! Input rows are `timestamp,value` (the NAB layout) or a bare `value`. A
//! first row whose value does not parse is taken as a header. Output values
//! use Rust's shortest round-trip formatting, so reading a written file back
//! reproduces every value exactly.

use std::fs::{self, File};
use std::io::{BufReader, Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};
use npfree::{Point, Series, Verdict};

use crate::error::{CliError, Result};

/// One parsed input row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub timestamp: Option<String>,
    pub value: f64,
}

fn parse_value(field: &str) -> Option<f64> {
    field.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn split(record: &StringRecord) -> (Option<&str>, &str) {
    match record.len() {
        0 => (None, ""),
        1 => (None, &record[0]),
        _ => (Some(&record[0]), &record[1]),
    }
}

/// Incremental reader of input records. Each record is handed out as soon as
/// its line is complete, so it works on unbounded streams.
pub struct RecordReader<R: Read> {
    inner: csv::Reader<R>,
    record: StringRecord,
    first: bool,
}

impl<R: Read> RecordReader<R> {
    pub fn new(reader: R) -> Self {
        let inner = ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(Trim::All)
            .from_reader(reader);
        Self {
            inner,
            record: StringRecord::new(),
            first: true,
        }
    }

    pub fn next_record(&mut self) -> Result<Option<CsvRecord>> {
        loop {
            if !self.inner.read_record(&mut self.record)? {
                return Ok(None);
            }
            let row = self.record.position().map_or(0, |p| p.line());
            let first = std::mem::replace(&mut self.first, false);
            let (timestamp, field) = split(&self.record);
            if field.is_empty() && timestamp.is_none() {
                self.first = first;
                continue;
            }
            match parse_value(field) {
                Some(value) => {
                    return Ok(Some(CsvRecord {
                        timestamp: timestamp.map(str::to_owned),
                        value,
                    }))
                }
                None if first => continue,
                None => {
                    return Err(CliError::Parse {
                        row,
                        field: field.to_owned(),
                    })
                }
            }
        }
    }
}

/// Reads a whole series.
pub fn ingest_csv<R: Read>(reader: R, name: &str) -> Result<Series> {
    let mut records = RecordReader::new(reader);
    let mut values = Vec::new();
    let mut stamps = Vec::new();
    let mut all_stamped = true;
    while let Some(r) = records.next_record()? {
        values.push(r.value);
        match r.timestamp {
            Some(ts) => stamps.push(ts),
            None => all_stamped = false,
        }
    }
    if values.is_empty() {
        return Err(CliError::EmptyFile);
    }
    let series = Series::new(name, values)?;
    Ok(if all_stamped {
        series.with_timestamps(stamps)?
    } else {
        series
    })
}

pub fn ingest_path(path: &Path) -> Result<Series> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".into());
    ingest_csv(BufReader::new(File::open(path)?), &name)
}

/// Writes `timestamp,value` rows (or bare values when there are no stamps).
pub fn write_series<W: Write>(mut out: W, series: &Series) -> Result<()> {
    match series.timestamps() {
        Some(stamps) => {
            writeln!(out, "timestamp,value")?;
            for (ts, v) in stamps.iter().zip(series.values()) {
                writeln!(out, "{ts},{v}")?;
            }
        }
        None => {
            writeln!(out, "value")?;
            for v in series.values() {
                writeln!(out, "{v}")?;
            }
        }
    }
    Ok(())
}

pub const RMSE_HEADER: &str = "t,rmse,retrained";
pub const VERDICT_HEADER: &str = "t,aare,thd,anomalous,retrained";

pub fn write_point<W: Write>(out: &mut W, p: &Point) -> std::io::Result<()> {
    writeln!(out, "{},{},{}", p.t, p.rmse, p.retrained)
}

pub fn write_verdict<W: Write>(out: &mut W, v: &Verdict) -> std::io::Result<()> {
    writeln!(
        out,
        "{},{},{},{},{}",
        v.t, v.aare, v.threshold, v.anomalous, v.retrained
    )
}

/// Writes a full RMSE file to `path` through a temporary sibling, so readers
/// never observe a partial file.
pub fn write_rmse_file(path: &Path, points: &[Point]) -> Result<()> {
    let tmp = path.with_extension("rmse.tmp");
    {
        let mut f = std::io::BufWriter::new(File::create(&tmp)?);
        writeln!(f, "{RMSE_HEADER}")?;
        for p in points {
            write_point(&mut f, p)?;
        }
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads the `rmse` column of a `t,rmse,retrained` file.
pub fn read_rmse<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = rec.position().map_or(0, |p| p.line());
        let field = rec.get(1).unwrap_or("");
        match parse_value(field) {
            Some(v) => out.push(v),
            None if i == 0 => continue,
            None => {
                return Err(CliError::Parse {
                    row,
                    field: field.to_owned(),
                })
            }
        }
    }
    Ok(out)
}

pub fn read_rmse_path(path: &Path) -> Result<Vec<f64>> {
    read_rmse(BufReader::new(File::open(path)?))
}
