//! Command-line front end for the simulator library.
//!
//! Two subcommands: `simulate` runs one of the three scenarios from a TOML
//! configuration and writes a CSV; `transition-window` answers sleep/wake
//! timing queries, optionally dumping the full feasibility grid. Exit codes:
//! 0 on success, 2 for configuration and usage problems, 1 for runtime
//! failures.

use clap::{Parser, Subcommand, ValueEnum};
use ee_sim::config::parse_config;
use ee_sim::error::{Error, Result};
use ee_sim::scenario::{
    emit_csv, run_combined_scenario, run_wired_scenario, run_wireless_scenario, ScenarioResult,
};
use ee_sim::transition::{feasible_region_grid, max_t1, max_t2, TimingBound};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "ee-sim",
    version,
    about = "End-to-end energy-efficiency simulator for clustered radio access over an optical core"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a configuration file and write CSV results.
    Simulate {
        /// TOML configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Scenario to run.
        #[arg(long, value_enum)]
        scenario: ScenarioKind,
        /// CSV file to write.
        #[arg(long)]
        output: PathBuf,
        /// Override the configured random seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Answer sleep/wake timing queries for a resonant period.
    #[command(allow_negative_numbers = true)]
    TransitionWindow {
        /// Resonant period, seconds.
        #[arg(long)]
        tau: f64,
        /// Sleep duration, seconds: report the largest admissible wake duration.
        #[arg(long, conflicts_with = "t2")]
        t1: Option<f64>,
        /// Wake duration, seconds: report the largest admissible sleep duration.
        #[arg(long)]
        t2: Option<f64>,
        /// Also evaluate an N x N admissibility grid over the timing square.
        #[arg(long)]
        grid: Option<usize>,
        /// Write the grid CSV here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScenarioKind {
    /// User-count sweep over the access side.
    Wireless,
    /// Hop and rate sweeps through the optical core.
    Wired,
    /// Seeded request stream through the scheduler.
    Combined,
}

fn describe(bound: &TimingBound) -> String {
    if bound.binding {
        format!("{} s (constraint-bound)", bound.seconds)
    } else {
        format!("{} s (interval cap, constraint never binds)", bound.seconds)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { config, scenario, output, seed } => {
            let mut config = parse_config(&config)?;
            if let Some(seed) = seed {
                config.scenario.seed = seed;
            }
            let result: ScenarioResult = match scenario {
                ScenarioKind::Wireless => run_wireless_scenario(&config)?,
                ScenarioKind::Wired => run_wired_scenario(&config)?,
                ScenarioKind::Combined => run_combined_scenario(&config)?.result,
            };
            emit_csv(&result, &output)?;
            println!("wrote {} rows to {}", result.rows.len(), output.display());
            Ok(())
        }
        Command::TransitionWindow { tau, t1, t2, grid, output } => {
            if !(tau > 0.0) {
                return Err(Error::NonPositiveParameter { name: "tau", value: tau });
            }
            match (t1, t2) {
                (Some(t1), None) => {
                    let bound = max_t2(t1, tau);
                    println!("t1 = {t1} s: largest admissible t2 = {}", describe(&bound));
                }
                (None, Some(t2)) => {
                    let bound = max_t1(t2, tau);
                    println!("t2 = {t2} s: largest admissible t1 = {}", describe(&bound));
                }
                _ => {
                    return Err(Error::ConfigValidation(
                        "exactly one of --t1 and --t2 must be given".into(),
                    ));
                }
            }
            if let Some(resolution) = grid {
                let grid = feasible_region_grid(tau, resolution)?;
                let csv = grid.to_csv();
                match output {
                    Some(path) => {
                        std::fs::write(&path, csv).map_err(|source| Error::OutputWrite {
                            path: path.display().to_string(),
                            source,
                        })?;
                        println!("wrote {0}x{0} grid to {1}", resolution, path.display());
                    }
                    None => print!("{csv}"),
                }
            }
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(if e.is_config_error() { 2 } else { 1 });
    }
}
