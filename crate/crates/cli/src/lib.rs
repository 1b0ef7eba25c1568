//! Scenario configuration, presets, sweeps, calibration and table
//! verification on top of `qbattery-core`.

pub mod calibrate;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod runner;
pub mod sweep;
pub mod tables;
pub mod verify;

pub use config::{load_config, load_config_file, ScenarioConfig};
pub use error::{CliError, CliResult};
pub use runner::{run_scenario, simulate, ScenarioRun};
pub use sweep::{run_sweep, SweepSummary};
pub use verify::{verify_tables, Tolerances, VerifyReport};
