//! Scenario configuration, read from TOML. Every table is optional and
//! unknown keys are rejected.
//!
//! ```toml
//! label = "ad-mid"
//! output_dir = "runs"
//! snapshot_times = [0, 10, 40, 100]
//!
//! [model]
//! b_s = 9.7082
//!
//! [channel]
//! kind = "amplitude_damping"          # or "dephasing", "none"
//! rate = { form = "constant", gamma = 0.5 }
//! # rate = { form = "exp_cosine", gamma0 = 0.5, beta = 0.5, omega = 1.0 }
//!
//! [integrator]                        # dissipative phase
//! dt = 1e-3
//! t_end = 100
//! sample_stride = 100
//!
//! [charging]                          # pulse phase, window fixed at 10 tau
//! dt = 1e-4
//! sample_stride = 100
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qbattery_core::dynamics::TwoPhaseConfig;
use qbattery_core::tolerances;
use qbattery_core::{ChannelSpec, IntegratorConfig, ModelParams, ObservableSet};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChargingConfig {
    pub dt: f64,
    pub sample_stride: usize,
}

impl Default for ChargingConfig {
    fn default() -> Self {
        Self {
            dt: tolerances::CHARGING_DT,
            sample_stride: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub label: String,
    pub output_dir: PathBuf,
    pub snapshot_times: Vec<f64>,
    pub model: ModelParams,
    pub channel: ChannelSpec,
    pub integrator: IntegratorConfig,
    pub charging: ChargingConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            label: "default".into(),
            output_dir: PathBuf::from("runs"),
            snapshot_times: Vec::new(),
            model: ModelParams::default(),
            channel: ChannelSpec::none(),
            integrator: IntegratorConfig::default(),
            charging: ChargingConfig::default(),
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> CliResult<()> {
        let wrap = |e: qbattery_core::Error| CliError::Config(e.to_string());
        validate_label(&self.label)?;
        self.model.validate().map_err(wrap)?;
        self.channel.validate().map_err(wrap)?;
        self.integrator.validate().map_err(wrap)?;
        self.two_phase()
            .charging
            .validate()
            .map_err(|e| CliError::Config(e.to_string().replace("integrator.", "charging.")))?;
        for &t in &self.snapshot_times {
            if !(0.0..=self.integrator.t_end).contains(&t) {
                return Err(CliError::Config(format!(
                    "invalid `snapshot_times`: {t} lies outside [0, {}]",
                    self.integrator.t_end
                )));
            }
        }
        Ok(())
    }

    pub fn two_phase(&self) -> TwoPhaseConfig {
        TwoPhaseConfig {
            charging: IntegratorConfig {
                dt: self.charging.dt,
                t_end: self.model.charging_duration(),
                sample_stride: self.charging.sample_stride,
                positivity_tol: self.integrator.positivity_tol,
            },
            dissipation: self.integrator,
        }
    }

    pub fn observables(&self) -> ObservableSet {
        ObservableSet::all().with_snapshots(self.snapshot_times.clone())
    }

    pub fn scenario_dir(&self) -> PathBuf {
        self.output_dir.join(&self.label)
    }
}

/// Labels become directory names: ASCII letters, digits, `.`, `_`, `-`, not
/// starting with a dot.
pub fn validate_label(label: &str) -> CliResult<()> {
    let ok = !label.is_empty()
        && !label.starts_with('.')
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'));
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "invalid `label`: {label:?} must be non-empty and use only [A-Za-z0-9._-]"
        )))
    }
}

/// Parses and validates a config document.
pub fn load_config(source: &str) -> CliResult<ScenarioConfig> {
    let cfg: ScenarioConfig =
        toml::from_str(source).map_err(|e| CliError::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config_file(path: &Path) -> CliResult<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    load_config(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qbattery_core::{ChannelKind, RateProfile};

    #[test]
    fn empty_document_is_defaults() {
        let cfg = load_config("").unwrap();
        assert_eq!(cfg, ScenarioConfig::default());
        assert_eq!(cfg.channel.kind, ChannelKind::None);
        assert_eq!(cfg.model, ModelParams::default());
    }

    #[test]
    fn amplitude_damping_document() {
        let cfg = load_config(
            r#"
            label = "mid"
            [channel]
            kind = "amplitude_damping"
            rate = { form = "constant", gamma = 0.5 }
            "#,
        )
        .unwrap();
        assert_eq!(cfg.channel.kind, ChannelKind::AmplitudeDamping);
        assert_eq!(cfg.channel.rate, RateProfile::Constant { gamma: 0.5 });
    }

    #[test]
    fn negative_tau_names_the_field() {
        let err = load_config("[model]\ntau = -1.0\n").unwrap_err();
        assert!(err.to_string().contains("tau"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = load_config("[model]\nlamda = 1.0\n").unwrap_err();
        assert!(err.to_string().contains("lamda"), "{err}");
        assert!(load_config("colour = 1\n").is_err());
    }

    #[test]
    fn parse_errors_carry_a_line() {
        let err = load_config("label = \"x\"\n[model\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn bad_labels_and_snapshots() {
        assert!(load_config("label = \"\"").is_err());
        assert!(load_config("label = \"../x\"").is_err());
        assert!(load_config("snapshot_times = [101.0]").is_err());
        assert!(load_config("snapshot_times = [0, 50, 100]").is_ok());
    }

    #[test]
    fn none_channel_with_rate_is_rejected() {
        let err = load_config(
            "[channel]\nkind = \"none\"\nrate = { form = \"constant\", gamma = 0.1 }\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("channel.rate"), "{err}");
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = ScenarioConfig {
            channel: ChannelSpec::dephasing(RateProfile::ExpCosine {
                gamma0: 0.5,
                beta: 0.1,
                omega: 1.0,
            }),
            snapshot_times: vec![0.0, 40.0],
            ..ScenarioConfig::default()
        };
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(load_config(&text).unwrap(), cfg);
    }
}
