use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use subsel::baselines::InnerPick;
use subsel::{CompoundOptions, IpmOptions, StoppingRule};

use crate::common::{
    read_matrix, run_method, CliError, CliResult, MatrixFormat, MethodName, MethodParams,
};

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Input matrix (CSV or SUBSELv1 binary, by extension)
    #[arg(long)]
    input: PathBuf,
    /// Output result JSON
    #[arg(long)]
    output: PathBuf,
    /// ipm|ipm-compound|random|uniform|kmedoids|volume|detgreedy|qrcp|clusterpick
    #[arg(long)]
    method: String,
    /// Number of rows to select
    #[arg(long)]
    k: Option<usize>,
    /// Stop once residual energy falls to this fraction of the total (ipm)
    #[arg(long)]
    residual_frac: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-row uncertainty scores for ipm-compound, one value per line
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Initial blend weight for ipm-compound
    #[arg(long, default_value_t = 1.0)]
    alpha0: f64,
    /// Per-selection multiplicative decay of the blend weight
    #[arg(long, default_value_t = 0.95)]
    decay: f64,
    /// Swap-iteration cap for kmedoids
    #[arg(long, default_value_t = 100)]
    max_swaps: usize,
    /// Per-cluster pick rule for clusterpick
    #[arg(long, value_enum, default_value_t = InnerArg::Medoid)]
    inner: InnerArg,
    /// Subset count above which volume sampling falls back to detgreedy
    #[arg(long, default_value_t = 200_000)]
    enumeration_cap: usize,
    /// Skip one CSV header line
    #[arg(long)]
    has_header: bool,
    /// Override input format detection
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InnerArg {
    Random,
    Medoid,
    Ipm,
}

impl From<InnerArg> for InnerPick {
    fn from(v: InnerArg) -> Self {
        match v {
            InnerArg::Random => InnerPick::Random,
            InnerArg::Medoid => InnerPick::Medoid,
            InnerArg::Ipm => InnerPick::Ipm,
        }
    }
}

pub fn run(args: SelectArgs) -> CliResult<i32> {
    let method: MethodName = args.method.parse()?;

    // Flag consistency first, before touching any files.
    match method {
        MethodName::Ipm => {
            if args.k.is_none() && args.residual_frac.is_none() {
                return Err(CliError::Usage(
                    "ipm needs --k, --residual-frac, or both".into(),
                ));
            }
        }
        MethodName::IpmCompound => {
            if args.scores.is_none() {
                return Err(CliError::Usage("ipm-compound requires --scores".into()));
            }
            if args.k.is_none() {
                return Err(CliError::Usage("ipm-compound requires --k".into()));
            }
        }
        _ => {
            if args.k.is_none() {
                return Err(CliError::Usage(format!("{} requires --k", args.method)));
            }
            if args.residual_frac.is_some() {
                return Err(CliError::Usage(format!(
                    "--residual-frac only applies to ipm, not {}",
                    args.method
                )));
            }
        }
    }

    let a = read_matrix(&args.input, args.format, args.has_header)?;
    let params = MethodParams {
        max_swaps: args.max_swaps,
        inner: args.inner.into(),
        enumeration_cap: args.enumeration_cap,
    };

    let result = match method {
        MethodName::Ipm => {
            let stop = StoppingRule::new(args.k, args.residual_frac)?;
            let opts = IpmOptions {
                seed: args.seed,
                ..IpmOptions::default()
            };
            subsel::ipm_select(&a, &stop, &opts)
        }
        MethodName::IpmCompound => {
            let scores = read_scores(args.scores.as_ref().unwrap(), a.nrows())?;
            let copts = CompoundOptions::new(args.alpha0, args.decay, scores)?;
            let opts = IpmOptions {
                seed: args.seed,
                ..IpmOptions::default()
            };
            subsel::ipm_select_compound(&a, args.k.unwrap(), &copts, &opts)?
        }
        other => run_method(other, &a, args.k.unwrap(), args.seed, &params)?,
    };

    if let Some(k) = args.k {
        if result.indices.len() < k {
            eprintln!(
                "warning: selected {} of {k} requested rows (remaining rows carry no new direction)",
                result.indices.len()
            );
        }
    }

    let parameters = json!({
        "method": args.method,
        "k": args.k,
        "residual_frac": args.residual_frac,
        "seed": args.seed,
        "alpha0": if method == MethodName::IpmCompound { Some(args.alpha0) } else { None },
        "decay": if method == MethodName::IpmCompound { Some(args.decay) } else { None },
        "input": args.input.display().to_string(),
    });
    let doc = subsel::io::ResultFile::from_result(&result, parameters);
    subsel::io::write_result(&doc, &args.output)?;
    Ok(0)
}

/// One score per line, matching the matrix row count.
fn read_scores(path: &std::path::Path, rows: usize) -> CliResult<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut scores = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: f64 = line.trim().parse().map_err(|_| {
            CliError::Data(format!(
                "{}:{}: cannot parse {:?} as a score",
                path.display(),
                i + 1,
                line.trim()
            ))
        })?;
        scores.push(value);
    }
    if scores.len() != rows {
        return Err(CliError::Data(format!(
            "{}: {} scores for {rows} matrix rows",
            path.display(),
            scores.len()
        )));
    }
    Ok(scores)
}
