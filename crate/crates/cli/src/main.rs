//! Command-line front end for multiquadric approximation.

mod commands;
mod config;
mod failure;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ApproxArgs, ExpandArgs, RecoverArgs, SweepArgs, WeightsArgs};
use verify::VerifyArgs;

#[derive(Parser, Debug)]
#[command(name = "multiquadric", version, about = "Approximation by scattered multiquadric translates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the expansion polynomial A[k,j].
    Expand(ExpandArgs),
    /// Solve the weight system for a doubling center set.
    Weights(WeightsArgs),
    /// Defect table for recovering A[k,2k+n] as y_min doubles.
    Recover(RecoverArgs),
    /// Approximate a target to a requested sup error.
    Approx(ApproxArgs),
    /// Run property suites.
    Verify(VerifyArgs),
    /// Error tables against y_1 or proxy degree.
    Sweep(SweepArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Expand(a) => commands::expand(a),
        Command::Weights(a) => commands::weights(a),
        Command::Recover(a) => commands::recover(a),
        Command::Approx(a) => commands::approx(a),
        Command::Verify(a) => verify::verify(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
