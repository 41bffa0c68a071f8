//! `halfspace-lab`: identity checks, simulations, validations and tables
//! on top of `halfspace-core`.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod output;
mod rational;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{check, simulate, tabulate, validate};
use crate::error::{LabError, Status};

/// Environment variable capping the worker count.
const THREADS_VAR: &str = "HALFSPACE_LAB_THREADS";

#[derive(Parser)]
#[command(name = "halfspace-lab", version, about = "Half-space growth models: exact checks, simulation and Pfaffian numerics")]
struct Cli {
    /// JSON file of parameters; keys are the snake_case flag names, and
    /// flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric-function and vertex-model residual suites.
    CheckIdentities(check::CheckArgs),
    /// Monte Carlo runs and exact laws.
    #[command(subcommand)]
    Simulate(simulate::SimulateCommand),
    /// End-to-end cross-checks with a pass/fail exit status.
    #[command(subcommand)]
    Validate(validate::ValidateCommand),
    /// CSV tables of Fredholm Pfaffian values.
    #[command(subcommand)]
    Tabulate(tabulate::TabulateCommand),
}

fn configure_threads() -> Result<(), LabError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| LabError::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    halfspace_core::par::set_threads(n);
    Ok(())
}

fn run(cli: Cli) -> Result<Status, LabError> {
    configure_threads()?;
    let file = config::load(cli.config.as_deref())?;
    let out = output::Sink::new(cli.output);
    match cli.command {
        Command::CheckIdentities(a) => check::run(&a, file.as_ref(), &out),
        Command::Simulate(c) => simulate::run(c, file.as_ref(), &out),
        Command::Validate(c) => validate::run(c, file.as_ref(), &out),
        Command::Tabulate(c) => tabulate::run(c, file.as_ref(), &out),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help/--version
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::ValidationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("halfspace-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
