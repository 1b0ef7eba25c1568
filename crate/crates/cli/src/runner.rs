use std::path::PathBuf;

use serde_json::json;

use qbattery_core::dynamics::{run_two_phase, TwoPhaseOutcome};
use qbattery_core::{build_h0, energy, ergotropy, l1_coherence};

use crate::calibrate::TARGET_COHERENCE;
use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::output::{write_json, write_record};

/// Runs both phases in memory without touching the filesystem.
pub fn simulate(cfg: &ScenarioConfig) -> CliResult<TwoPhaseOutcome> {
    cfg.validate()?;
    run_two_phase(
        &cfg.model,
        &cfg.channel,
        &cfg.two_phase(),
        &cfg.observables(),
    )
    .map_err(|e| CliError::from_core(&cfg.label, e))
}

#[derive(Debug)]
pub struct ScenarioRun {
    pub outcome: TwoPhaseOutcome,
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
}

/// Runs a scenario and writes `timeseries.csv`, `charging.csv`, one snapshot
/// file per requested time, and `meta.json` into `<output_dir>/<label>/`.
pub fn run_scenario(cfg: &ScenarioConfig) -> CliResult<ScenarioRun> {
    let outcome = simulate(cfg)?;
    let dir = cfg.scenario_dir();
    let mut files = write_record(&dir, "timeseries.csv", &outcome.dissipation)?;
    let charging_csv = dir.join("charging.csv");
    crate::output::write_text(
        &charging_csv,
        &crate::output::timeseries_csv(&outcome.charging),
    )?;
    files.push(charging_csv);

    let h0 = build_h0(&cfg.model).map_err(|e| CliError::from_core(&cfg.label, e))?;
    let charged = &outcome.charged;
    let coherence = l1_coherence(charged);
    let core = |e| CliError::from_core(&cfg.label, e);
    let meta = json!({
        "label": cfg.label,
        "config": cfg,
        "charged_state": {
            "energy": energy(charged, &h0).map_err(core)?,
            "ergotropy": ergotropy(charged, &h0).map_err(core)?,
            "coherence": coherence,
            "populations": charged.populations(),
        },
        "calibration": {
            "b_s": cfg.model.b_s,
            "target_coherence": TARGET_COHERENCE,
            "residual": coherence - TARGET_COHERENCE,
        },
        "diagnostics": {
            "charging": outcome.charging.diagnostics,
            "dissipation": outcome.dissipation.diagnostics,
        },
        "positivity_warnings": outcome.dissipation.diagnostics.positivity_warnings,
    });
    let meta_path = dir.join("meta.json");
    write_json(&meta_path, &meta)?;
    files.push(meta_path);
    Ok(ScenarioRun {
        outcome,
        dir,
        files,
    })
}
