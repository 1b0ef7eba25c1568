use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qbattery_cli::output::write_json;
use qbattery_cli::presets::{catalog, preset};
use qbattery_cli::sweep::parse_values;
use qbattery_cli::verify::summary_lines;
use qbattery_cli::{
    load_config_file, run_scenario, run_sweep, verify_tables, CliError, CliResult, Tolerances,
};

/// Charge-then-dissipate simulations of the spin-valley quantum battery.
#[derive(Parser)]
#[command(name = "qbattery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a TOML config.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Run a named preset (see `list-presets`).
    Preset {
        name: String,
        #[arg(long, default_value = "runs")]
        output_dir: PathBuf,
    },
    /// Run one scenario per value of a config field.
    Sweep {
        config: PathBuf,
        /// Field path such as `channel.rate.gamma`, or an unambiguous leaf name.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Compare simulations against the reference tables.
    Verify {
        /// Use the frozen pulse amplitude instead of rerunning the calibration scan.
        #[arg(long)]
        skip_calibration: bool,
        #[arg(long, default_value = "runs")]
        output_dir: PathBuf,
        #[arg(long, default_value_t = Tolerances::default().relative)]
        relative: f64,
        #[arg(long, default_value_t = Tolerances::default().absolute)]
        absolute: f64,
        #[arg(long, default_value_t = Tolerances::default().population)]
        population: f64,
    },
    /// List the built-in presets.
    ListPresets,
}

fn execute(command: Command) -> CliResult<()> {
    match command {
        Command::Run { config, output_dir } => {
            let mut cfg = load_config_file(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            let run = run_scenario(&cfg)?;
            println!("{}", run.dir.display());
        }
        Command::Preset { name, output_dir } => {
            let mut cfg = preset(&name).ok_or_else(|| {
                CliError::Usage(format!("unknown preset `{name}`; try `list-presets`"))
            })?;
            cfg.output_dir = output_dir;
            let run = run_scenario(&cfg)?;
            println!("{}", run.dir.display());
        }
        Command::Sweep {
            config,
            axis,
            values,
            output_dir,
        } => {
            let mut cfg = load_config_file(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            let summary = run_sweep(&cfg, &axis, &parse_values(&values)?)?;
            match &summary.path {
                Some(path) => println!("{}", path.display()),
                None => println!("no values; nothing to run"),
            }
        }
        Command::Verify {
            skip_calibration,
            output_dir,
            relative,
            absolute,
            population,
        } => {
            let tol = Tolerances {
                relative,
                absolute,
                population,
            };
            let report = verify_tables(&tol, skip_calibration)?;
            for line in summary_lines(&report) {
                println!("{line}");
            }
            let path = output_dir.join("verify_report.json");
            write_json(
                &path,
                &serde_json::to_value(&report).expect("report serializes"),
            )?;
            println!("report: {}", path.display());
        }
        Command::ListPresets => {
            for p in catalog() {
                println!("{:<14} {}", p.name, p.description);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
