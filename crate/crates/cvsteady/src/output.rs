//! CSV rendering of sweep results.
//!
//! Columns: optional `series`, the axis names, then `E_N, duan, n_m_eff,
//! n_lc_eff, stability_margin, stable, omega_m_eff, error`. Numbers carry 12
//! significant digits; rows end with LF. Unstable points leave the
//! state-dependent cells empty, and failed points leave every result cell
//! empty and fill `error`.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::sweep::{GridResult, Row};

pub const RESULT_COLUMNS: [&str; 8] = [
    "E_N",
    "duan",
    "n_m_eff",
    "n_lc_eff",
    "stability_margin",
    "stable",
    "omega_m_eff",
    "error",
];

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

pub fn header(result: &GridResult) -> Vec<String> {
    let mut h = Vec::new();
    if !result.config.series.is_empty() {
        h.push("series".to_owned());
    }
    h.extend(result.config.axes().map(|a| a.name.name().to_owned()));
    h.extend(RESULT_COLUMNS.iter().map(|s| (*s).to_owned()));
    h
}

fn record(row: &Row, with_series: bool) -> Vec<String> {
    let mut r = Vec::with_capacity(row.coords.len() + RESULT_COLUMNS.len() + 1);
    if with_series {
        r.push(row.series.clone().unwrap_or_default());
    }
    r.extend(row.coords.iter().copied().map(format_number));
    match &row.outcome {
        Ok(p) => {
            let s = p.state.as_ref();
            r.push(opt(s.map(|s| s.log_negativity)));
            r.push(opt(s.map(|s| s.duan)));
            r.push(opt(s.map(|s| s.n_m_eff)));
            r.push(opt(s.map(|s| s.n_lc_eff)));
            r.push(format_number(p.stability_margin * row.rate_unit));
            r.push(p.stable.to_string());
            r.push(opt(p.omega_m_eff.map(|w| w * row.rate_unit)));
            r.push(String::new());
        }
        Err(msg) => {
            r.extend(std::iter::repeat_n(String::new(), RESULT_COLUMNS.len() - 1));
            r.push(msg.clone());
        }
    }
    r
}

/// Writes the CSV to any sink.
pub fn write_csv<W: Write>(result: &GridResult, sink: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(header(result))?;
    let with_series = !result.config.series.is_empty();
    for row in &result.rows {
        w.write_record(record(row, with_series))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(result: &GridResult, path: &Path) -> Result<(), OutputError> {
    let file = File::create(path).map_err(|source| OutputError::Io {
        path: path.to_owned(),
        source,
    })?;
    write_csv(result, io::BufWriter::new(file)).map_err(|source| OutputError::Csv {
        path: path.to_owned(),
        source,
    })
}
