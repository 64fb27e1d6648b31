use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quadsim::scenario::{self, MethodName, PresetName, ScenarioError};
use quadsim::{load_scenario, run, RunError};
use quadsim_core::Termination;

const EXIT_OK: u8 = 0;
const EXIT_SCENARIO: u8 = 2;
const EXIT_SINGULARITY: u8 = 3;
const EXIT_IO: u8 = 4;

/// Batch quadrotor flight simulator: scenario JSON in, trajectory CSV out.
#[derive(Parser)]
#[command(name = "quadsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its trajectory CSV.
    Run {
        /// Scenario JSON file.
        #[arg(long)]
        scenario: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario's time step, s.
        #[arg(long, allow_negative_numbers = true)]
        dt: Option<f64>,
        /// Override the scenario's duration, s.
        #[arg(long, allow_negative_numbers = true)]
        duration: Option<f64>,
        /// Override the scenario's integration method.
        #[arg(long, value_enum)]
        method: Option<MethodName>,
    },
    /// Write a built-in reference scenario as JSON.
    Preset {
        /// Which preset to emit.
        #[arg(long, value_enum)]
        name: PresetName,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Parse and validate a scenario without running it.
    Validate {
        /// Scenario JSON file.
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn scenario_exit(err: &ScenarioError) -> u8 {
    match err {
        ScenarioError::Io(_) => EXIT_IO,
        ScenarioError::Parse(_) | ScenarioError::Invalid(_) => EXIT_SCENARIO,
    }
}

fn real_main() -> u8 {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, out, dt, duration, method } => {
            let mut scn = match load_scenario(&scenario) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return scenario_exit(&e);
                }
            };
            if let Some(dt) = dt {
                scn.dt = dt;
            }
            if let Some(duration) = duration {
                scn.duration = duration;
            }
            if let Some(method) = method {
                scn.method = method.into();
            }
            if let Err(e) = scn.validate_sim() {
                eprintln!("error: {e}");
                return EXIT_SCENARIO;
            }
            match run(&scn, &out) {
                Ok(summary) => {
                    println!("{summary}");
                    match summary.termination {
                        Termination::Completed => EXIT_OK,
                        Termination::Singularity { .. } => EXIT_SINGULARITY,
                    }
                }
                Err(e @ RunError::Io(_)) => {
                    eprintln!("error: {e}");
                    EXIT_IO
                }
                Err(e @ RunError::Sim(_)) => {
                    eprintln!("error: {e}");
                    EXIT_SCENARIO
                }
            }
        }
        Command::Preset { name, out } => {
            let text = scenario::preset_scenario(name).to_json();
            match std::fs::write(&out, text) {
                Ok(()) => {
                    println!("wrote {}", out.display());
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", out.display());
                    EXIT_IO
                }
            }
        }
        Command::Validate { scenario } => match load_scenario(&scenario) {
            Ok(scn) => {
                println!(
                    "ok: {} steps of dt = {} s, method {:?}",
                    (scn.duration / scn.dt).round(),
                    scn.dt,
                    scn.method
                );
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                scenario_exit(&e)
            }
        },
    }
}

fn main() -> ExitCode {
    ExitCode::from(real_main())
}
