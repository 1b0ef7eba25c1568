//! CSV and JSON persistence of trajectories.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use qbattery_core::dynamics::{Snapshot, TrajectoryRecord};

use crate::error::{CliError, CliResult};

pub const CSV_HEADER: &str = "t,energy,purity,coherence,ergotropy,min_eig,rate";

/// 17 significant digits, enough to round-trip any f64.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_row(row: &[f64]) -> String {
    row.iter()
        .map(|&x| format_value(x))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn timeseries_csv(rec: &TrajectoryRecord) -> String {
    let mut out = String::with_capacity(rec.len() * 170);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..rec.len() {
        let _ = writeln!(out, "{}", format_row(&rec.row(i)));
    }
    out
}

pub fn snapshot_json(s: &Snapshot) -> Value {
    let m = s.rho.matrix();
    let entries: Vec<[f64; 2]> = m.as_slice().iter().map(|z| [z.re, z.im]).collect();
    json!({
        "t": s.t,
        "dim": m.dim(),
        "entries": entries,
        "eigenvalues": s.eigenvalues,
    })
}

/// `snapshot_t10.json`, `snapshot_t0.5.json`
pub fn snapshot_file_name(t: f64) -> String {
    format!("snapshot_t{t}.json")
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    write_text(path, &text)
}

/// Writes the time series and snapshots of one record into `dir`; returns
/// the paths written.
pub fn write_record(dir: &Path, csv_name: &str, rec: &TrajectoryRecord) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    let csv = dir.join(csv_name);
    write_text(&csv, &timeseries_csv(rec))?;
    written.push(csv);
    for s in &rec.snapshots {
        let path = dir.join(snapshot_file_name(s.t));
        write_json(&path, &snapshot_json(s))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-17, 9.708194204695033, 0.0] {
            let s = format_value(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_value(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn snapshot_names() {
        assert_eq!(snapshot_file_name(10.0), "snapshot_t10.json");
        assert_eq!(snapshot_file_name(0.0), "snapshot_t0.json");
        assert_eq!(snapshot_file_name(2.5), "snapshot_t2.5.json");
    }
}
