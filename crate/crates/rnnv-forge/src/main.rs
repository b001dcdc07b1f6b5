//! `rnnv-forge`: derive, tabulate, simulate and sweep RNnν sequences.

mod args;
mod config;
mod derive;
mod kappa;
mod output;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Raised for bad combinations of otherwise well-formed arguments.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

/// Raised when computed values disagree with their reference.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

#[derive(Parser)]
#[command(name = "rnnv-forge", version, about = "Compile and simulate symmetry-based singlet-triplet sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate scaling factors, numeric and closed form
    KappaTable(kappa::KappaArgs),
    /// Compile a sequence to its JSON event list
    Derive(derive::DeriveArgs),
    /// Run one protocol
    Simulate(simulate::SimulateArgs),
    /// Run a protocol over a parameter grid
    Sweep(simulate::SweepArgs),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    if err.downcast_ref::<Mismatch>().is_some() {
        return 4;
    }
    match err.downcast_ref::<rnnv::Error>() {
        Some(rnnv::Error::InfeasibleTiming { .. })
        | Some(rnnv::Error::DurationMismatch { .. })
        | Some(rnnv::Error::TermNotAllowed(_))
        | Some(rnnv::Error::NotSingletTriplet(_))
        | Some(rnnv::Error::FilterMarker(_)) => 3,
        Some(rnnv::Error::NonFinite(_)) | Some(rnnv::Error::NoConvergence) => 4,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::KappaTable(a) => kappa::run(&a),
        Command::Derive(a) => derive::run(&a),
        Command::Simulate(a) => simulate::run_simulate(&a),
        Command::Sweep(a) => simulate::run_sweep(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
