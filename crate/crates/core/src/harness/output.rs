//! CSV and JSON writers shared by all subcommands.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Result, RwaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = RwaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(RwaError::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

/// A row with a fixed column order. `cells` must line up with `HEADER`, and
/// the serde field order must match it too so both formats agree.
pub trait Record: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn fmt_bool(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

pub fn write_rows<R: Record, W: Write>(rows: &[R], format: Format, out: W) -> Result<()> {
    let io = |e: std::io::Error| RwaError::InvalidArgument(format!("write failed: {e}"));
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let map = |e: csv::Error| RwaError::InvalidArgument(format!("write failed: {e}"));
            w.write_record(R::HEADER).map_err(map)?;
            for r in rows {
                w.write_record(r.cells()).map_err(map)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)
                .map_err(|e| RwaError::InvalidArgument(format!("write failed: {e}")))?;
            writeln!(out).map_err(io)?;
        }
    }
    Ok(())
}
