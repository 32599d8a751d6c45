use std::path::PathBuf;

use clap::Args;
use subsel::suites::{run_suite, SUITE_NAMES};

use crate::common::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// error-ratio | runtime | lemma | outlier
    #[arg(long)]
    name: String,
    /// Also write the report as JSON
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(args: SuiteArgs) -> CliResult<i32> {
    if !SUITE_NAMES.contains(&args.name.as_str()) {
        return Err(CliError::Usage(format!(
            "unknown suite {:?}; expected one of {}",
            args.name,
            SUITE_NAMES.join("|")
        )));
    }
    let report = run_suite(&args.name)?;
    print!("{report}");
    if let Some(path) = &args.output {
        let text =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Data(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}
