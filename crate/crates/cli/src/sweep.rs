//! One-parameter sweeps over a numeric config field.

use std::path::PathBuf;

use rayon::prelude::*;

use qbattery_core::RateProfile;

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::output::{format_row, format_value, write_text, CSV_HEADER};
use crate::runner::run_scenario;

/// Sweepable fields by full path.
pub const AXES: [&str; 14] = [
    "model.lambda",
    "model.alpha",
    "model.eta",
    "model.n_x",
    "model.n_y",
    "model.b_s",
    "model.tau",
    "channel.rate.gamma",
    "channel.rate.gamma0",
    "channel.rate.beta",
    "channel.rate.omega",
    "integrator.dt",
    "integrator.t_end",
    "charging.dt",
];

/// Resolves a full path or an unambiguous last component (`gamma`, `beta`).
pub fn resolve_axis(axis: &str) -> CliResult<&'static str> {
    if let Some(&full) = AXES.iter().find(|&&a| a == axis) {
        return Ok(full);
    }
    let matches: Vec<&'static str> = AXES
        .iter()
        .copied()
        .filter(|a| a.rsplit('.').next() == Some(axis))
        .collect();
    match matches.as_slice() {
        [one] => Ok(one),
        [] => Err(CliError::Usage(format!(
            "unknown sweep axis `{axis}`; expected one of {}",
            AXES.join(", ")
        ))),
        many => Err(CliError::Usage(format!(
            "ambiguous sweep axis `{axis}`: {}",
            many.join(", ")
        ))),
    }
}

fn leaf(axis: &str) -> &str {
    axis.rsplit('.').next().unwrap_or(axis)
}

/// Sets the field at `axis` (a full path from `AXES`).
pub fn apply(cfg: &mut ScenarioConfig, axis: &str, value: f64) -> CliResult<()> {
    let m = &mut cfg.model;
    match axis {
        "model.lambda" => m.lambda = value,
        "model.alpha" => m.alpha = value,
        "model.eta" => m.eta = value,
        "model.n_x" => m.n_x = value,
        "model.n_y" => m.n_y = value,
        "model.b_s" => m.b_s = value,
        "model.tau" => m.tau = value,
        "integrator.dt" => cfg.integrator.dt = value,
        "integrator.t_end" => cfg.integrator.t_end = value,
        "charging.dt" => cfg.charging.dt = value,
        _ => {
            let form = rate_form(&cfg.channel.rate);
            match (axis, &mut cfg.channel.rate) {
                ("channel.rate.gamma", RateProfile::Constant { gamma }) => *gamma = value,
                ("channel.rate.gamma0", RateProfile::ExpCosine { gamma0, .. }) => *gamma0 = value,
                ("channel.rate.beta", RateProfile::ExpCosine { beta, .. }) => *beta = value,
                ("channel.rate.omega", RateProfile::ExpCosine { omega, .. }) => *omega = value,
                _ if AXES.contains(&axis) => {
                    return Err(CliError::Usage(format!(
                        "axis `{axis}` does not apply to a `{form}` rate profile"
                    )));
                }
                _ => return Err(CliError::Usage(format!("unknown sweep axis `{axis}`"))),
            }
        }
    }
    Ok(())
}

fn rate_form(rate: &RateProfile) -> &'static str {
    match rate {
        RateProfile::Constant { .. } => "constant",
        RateProfile::ExpCosine { .. } => "exp_cosine",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub label: String,
    /// Terminal row of the dissipative time series.
    pub terminal: [f64; 7],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub axis: String,
    pub rows: Vec<SweepRow>,
    /// Summary CSV, absent for an empty sweep.
    pub path: Option<PathBuf>,
}

impl SweepSummary {
    pub fn csv(&self) -> String {
        let mut out = format!("value,label,{CSV_HEADER}\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                format_value(row.value),
                row.label,
                format_row(&row.terminal)
            ));
        }
        out
    }
}

/// Label of the scenario run for one sweep value.
pub fn point_label(base: &str, axis: &str, value: f64) -> String {
    format!("{base}-{}{value}", leaf(axis))
}

/// Runs one scenario per value in parallel, each writing its own directory,
/// then writes `<output_dir>/<label>-sweep-<leaf>.csv` with the terminal
/// rows. An empty value list does nothing.
pub fn run_sweep(base: &ScenarioConfig, axis: &str, values: &[f64]) -> CliResult<SweepSummary> {
    let axis = resolve_axis(axis)?;
    if values.is_empty() {
        return Ok(SweepSummary {
            axis: axis.to_string(),
            rows: Vec::new(),
            path: None,
        });
    }
    let configs = values
        .iter()
        .map(|&v| {
            let mut cfg = base.clone();
            apply(&mut cfg, axis, v)?;
            cfg.label = point_label(&base.label, axis, v);
            cfg.validate()?;
            Ok((v, cfg))
        })
        .collect::<CliResult<Vec<_>>>()?;

    let rows = configs
        .par_iter()
        .map(|(v, cfg)| {
            let run = run_scenario(cfg)?;
            let rec = &run.outcome.dissipation;
            Ok(SweepRow {
                value: *v,
                label: cfg.label.clone(),
                terminal: rec.row(rec.len() - 1),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut summary = SweepSummary {
        axis: axis.to_string(),
        rows,
        path: None,
    };
    let path = base
        .output_dir
        .join(format!("{}-sweep-{}.csv", base.label, leaf(axis)));
    write_text(&path, &summary.csv())?;
    summary.path = Some(path);
    Ok(summary)
}

/// Parses `0.1,0.5,1.0`; an empty string is an empty list.
pub fn parse_values(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("sweep value `{s}` is not a number")))
        })
        .collect()
}
