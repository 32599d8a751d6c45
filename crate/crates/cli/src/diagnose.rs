use std::path::PathBuf;

use clap::Args;
use subsel::metrics::{correlation_bound_margin, SpectrumDiagnostics};

use crate::common::{read_matrix, CliResult, MatrixFormat};

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    /// Matrix to diagnose
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    has_header: bool,
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

pub fn run(args: DiagnoseArgs) -> CliResult<i32> {
    let a = read_matrix(&args.input, args.format, args.has_header)?;
    let diag = SpectrumDiagnostics::compute(&a)?;
    let margin = correlation_bound_margin(&a)?;

    println!("rom: {}", diag.rom);
    println!(
        "eigenvalues: {}",
        diag.eigenvalues
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    match &diag.sensitivities {
        Some(s) => println!(
            "sensitivities: {}",
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        None => println!("sensitivities: undefined (eigenvalue gap below 1e-10)"),
    }
    println!("correlation_bound_margin: {margin}");
    Ok(0)
}
