//! Comparison of simulated trajectories against the reference tables, plus
//! shape checks that hold for any pulse amplitude.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qbattery_core::dynamics::{TrajectoryRecord, TwoPhaseOutcome};
use qbattery_core::ModelParams;

use crate::calibrate::{calibrate, Calibration, CalibrationGrid, CALIBRATED_B_S, TARGET_COHERENCE};
use crate::error::{CliError, CliResult};
use crate::output::timeseries_csv;
use crate::presets::preset;
use crate::runner::simulate;
use crate::tables::{ReferenceTable, TABLES};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance on coherence and ergotropy cells.
    pub relative: f64,
    /// Absolute floor for cells whose reference value is near zero.
    pub absolute: f64,
    /// Absolute tolerance on each population.
    pub population: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relative: 0.10,
            absolute: 0.005,
            population: 0.02,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CalibrationSummary {
    pub performed: bool,
    pub b_s: f64,
    pub target_coherence: f64,
    pub residual: f64,
    pub details: Option<Calibration>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub table: &'static str,
    pub t: f64,
    pub quantity: String,
    pub expected: f64,
    pub simulated: f64,
    pub delta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub table: &'static str,
    pub t: f64,
    /// Tabulated column, sorted descending.
    pub tabulated_sorted: Vec<f64>,
    /// Eigenvalues of the simulated ρ, descending.
    pub simulated_eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub calibration: CalibrationSummary,
    pub tolerances: Tolerances,
    pub cells: Vec<Cell>,
    pub cells_passed: usize,
    pub spectra: Vec<SpectrumRow>,
    pub qualitative: Vec<Check>,
    pub qualitative_pass: bool,
}

/// Runs every table scenario at amplitude `b_s`, keyed by preset name.
pub fn run_table_scenarios(b_s: f64) -> CliResult<BTreeMap<&'static str, TwoPhaseOutcome>> {
    let mut names: Vec<&'static str> = TABLES.iter().map(|t| t.preset).collect();
    names.dedup();
    let runs = names
        .par_iter()
        .map(|&name| {
            let mut cfg = preset(name).expect("tables reference known presets");
            cfg.model.b_s = b_s;
            Ok((name, simulate(&cfg)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(runs.into_iter().collect())
}

fn at(rec: &TrajectoryRecord, series: &[f64], t: f64) -> f64 {
    series[rec.index_of(t).expect("non-empty record")]
}

fn table_cells(
    table: &ReferenceTable,
    rec: &TrajectoryRecord,
    tol: &Tolerances,
    cells: &mut Vec<Cell>,
    spectra: &mut Vec<SpectrumRow>,
) {
    let scalar = |quantity: &str, t: f64, expected: f64, simulated: f64| {
        let delta = simulated - expected;
        Cell {
            table: table.id,
            t,
            quantity: quantity.to_string(),
            expected,
            simulated,
            delta,
            pass: delta.abs() <= (tol.relative * expected.abs()).max(tol.absolute),
        }
    };
    for row in &table.rows {
        cells.push(scalar(
            "coherence",
            row.t,
            row.coherence,
            at(rec, &rec.coherence, row.t),
        ));
        cells.push(scalar(
            "ergotropy",
            row.t,
            row.ergotropy,
            at(rec, &rec.ergotropy, row.t),
        ));
        let snap = rec
            .snapshot_at(row.t)
            .expect("presets snapshot the table times");
        for (k, (&expected, simulated)) in row
            .populations
            .iter()
            .zip(snap.rho.populations())
            .enumerate()
        {
            let delta = simulated - expected;
            cells.push(Cell {
                table: table.id,
                t: row.t,
                quantity: format!("population[{k}]"),
                expected,
                simulated,
                delta,
                pass: delta.abs() <= tol.population,
            });
        }
        let mut tabulated_sorted = row.populations.to_vec();
        tabulated_sorted.sort_by(|a, b| b.total_cmp(a));
        spectra.push(SpectrumRow {
            table: table.id,
            t: row.t,
            tabulated_sorted,
            simulated_eigenvalues: snap.eigenvalues.clone(),
        });
    }
}

fn check(name: impl Into<String>, value: f64, threshold: f64, pass: bool) -> Check {
    Check {
        name: name.into(),
        value,
        threshold,
        pass,
    }
}

/// Largest increase between consecutive samples; positive means the series
/// rose at least once.
pub fn max_rise(series: &[f64]) -> f64 {
    series
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Shape checks: ergotropy plateaus, decay under weak damping, dephasing to
/// the maximally mixed state, non-Markovian backflow and enhancement, and
/// agreement of the two γ = 0.5 presets.
pub fn qualitative_checks(runs: &BTreeMap<&'static str, TwoPhaseOutcome>) -> Vec<Check> {
    let d = |name: &str| &runs[name].dissipation;
    let mut out = Vec::new();

    for (name, label) in [("ad-strong", "AD gamma=1.0"), ("ad-mid", "AD gamma=0.5")] {
        let r = d(name);
        let gap = (at(r, &r.ergotropy, 40.0) - at(r, &r.ergotropy, 100.0)).abs();
        out.push(check(
            format!("{label}: ergotropy plateau |E(40) - E(100)|"),
            gap,
            1e-3,
            gap < 1e-3,
        ));
    }

    let r = d("ad-weak");
    let ratio = at(r, &r.ergotropy, 100.0) / r.ergotropy[0];
    out.push(check(
        "AD gamma=0.1: E(100) / E(0)",
        ratio,
        0.25,
        ratio < 0.25,
    ));

    for (name, label) in [
        ("deph-weak", "Deph gamma=0.1"),
        ("deph-strong", "Deph gamma=1.0"),
    ] {
        let r = d(name);
        let c40 = at(r, &r.coherence, 40.0);
        out.push(check(format!("{label}: C(40)"), c40, 0.02, c40 < 0.02));
        let e100 = at(r, &r.ergotropy, 100.0);
        out.push(check(format!("{label}: E(100)"), e100, 0.01, e100 < 0.01));
        let spread = r
            .snapshot_at(100.0)
            .expect("snapshot at t = 100")
            .eigenvalues
            .iter()
            .map(|p| (p - 0.25).abs())
            .fold(0.0, f64::max);
        out.push(check(
            format!("{label}: max |p(100) - 1/4|"),
            spread,
            0.01,
            spread < 0.01,
        ));
    }

    let r = d("nonmarkov-b05");
    let rise = max_rise(&r.coherence);
    out.push(check(
        "beta=0.5: largest coherence rise between samples",
        rise,
        0.0,
        rise > 0.0,
    ));

    let markov = d("markov");
    let markov_end = markov.ergotropy[markov.len() - 1];
    for (name, label) in [("nonmarkov-b05", "beta=0.5"), ("nonmarkov-b10", "beta=1.0")] {
        let r = d(name);
        let margin = r.ergotropy[r.len() - 1] - markov_end;
        out.push(check(
            format!("{label}: terminal ergotropy above Markovian by"),
            margin,
            0.02,
            margin > 0.02,
        ));
    }

    let same = timeseries_csv(d("markov")) == timeseries_csv(d("ad-mid"));
    out.push(check(
        "markov and ad-mid time series identical",
        if same { 0.0 } else { 1.0 },
        0.0,
        same,
    ));
    out
}

pub fn verify_tables(tol: &Tolerances, skip_calibration: bool) -> CliResult<VerifyReport> {
    let calibration = if skip_calibration {
        let rho = crate::calibrate::charged_state(&ModelParams::default(), CALIBRATED_B_S)
            .map_err(|e| CliError::from_core("calibration", e))?;
        CalibrationSummary {
            performed: false,
            b_s: CALIBRATED_B_S,
            target_coherence: TARGET_COHERENCE,
            residual: qbattery_core::l1_coherence(&rho) - TARGET_COHERENCE,
            details: None,
        }
    } else {
        let cal = calibrate(&ModelParams::default(), &CalibrationGrid::default())
            .map_err(|e| CliError::from_core("calibration", e))?;
        CalibrationSummary {
            performed: true,
            b_s: cal.b_s,
            target_coherence: TARGET_COHERENCE,
            residual: cal.residual,
            details: Some(cal),
        }
    };

    let runs = run_table_scenarios(calibration.b_s)?;
    let mut cells = Vec::new();
    let mut spectra = Vec::new();
    for table in &TABLES {
        table_cells(
            table,
            &runs[table.preset].dissipation,
            tol,
            &mut cells,
            &mut spectra,
        );
    }
    let qualitative = qualitative_checks(&runs);
    Ok(VerifyReport {
        calibration,
        tolerances: *tol,
        cells_passed: cells.iter().filter(|c| c.pass).count(),
        cells,
        spectra,
        qualitative_pass: qualitative.iter().all(|c| c.pass),
        qualitative,
    })
}

/// Human-readable summary, one line per check and per table.
pub fn summary_lines(report: &VerifyReport) -> Vec<String> {
    let mut lines = Vec::new();
    let cal = &report.calibration;
    lines.push(format!(
        "calibration {}: B_s = {:.6}, C(0) residual = {:+.2e}",
        if cal.performed {
            "performed"
        } else {
            "skipped (frozen value)"
        },
        cal.b_s,
        cal.residual
    ));
    for c in &report.qualitative {
        lines.push(format!(
            "[{}] {} = {:.4e} (threshold {:.0e})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        ));
    }
    for table in &TABLES {
        let mine: Vec<&Cell> = report
            .cells
            .iter()
            .filter(|c| c.table == table.id)
            .collect();
        let passed = mine.iter().filter(|c| c.pass).count();
        let worst = mine
            .iter()
            .filter(|c| !c.quantity.starts_with("population"))
            .max_by(|a, b| a.delta.abs().total_cmp(&b.delta.abs()));
        let worst = worst
            .map(|c| {
                format!(
                    "; largest C/E delta {:+.4} ({} at t={})",
                    c.delta, c.quantity, c.t
                )
            })
            .unwrap_or_default();
        lines.push(format!(
            "table {} ({}): {passed}/{} cells within tolerance{worst}",
            table.id,
            table.caption,
            mine.len()
        ));
    }
    lines
}
