//! `subsel` command line: select rows, evaluate selections, print spectral
//! diagnostics, generate synthetic data, and run benchmark grids and suites.
//!
//! Exit codes: 0 success, 1 data or computation error, 2 usage error.

use clap::{Parser, Subcommand};

mod bench;
mod common;
mod diagnose;
mod eval;
mod select;
mod suite;
mod synth;

#[derive(Parser)]
#[command(
    name = "subsel",
    version,
    about = "Row subset selection for data matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a selection method and write the result JSON
    Select(select::SelectArgs),
    /// Score a selection result against its matrix
    Eval(eval::EvalArgs),
    /// Print ROM, eigenvalues, sensitivities, and the correlation margin
    Diagnose(diagnose::DiagnoseArgs),
    /// Generate a synthetic dataset with a labels sidecar
    Synth(synth::SynthArgs),
    /// Run a method x size x trial grid and emit a flat CSV
    Bench(bench::BenchArgs),
    /// Run a named benchmark/property suite
    Suite(suite::SuiteArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Select(args) => select::run(args),
        Command::Eval(args) => eval::run(args),
        Command::Diagnose(args) => diagnose::run(args),
        Command::Synth(args) => synth::run(args),
        Command::Bench(args) => bench::run(args),
        Command::Suite(args) => suite::run(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
