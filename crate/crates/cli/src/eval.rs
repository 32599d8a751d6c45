use std::path::PathBuf;

use clap::Args;
use subsel::baselines::random_select;
use subsel::datagen::mix_seed;
use subsel::metrics::{best_rank_k_error, projection_error};

use crate::common::{read_matrix, CliResult, MatrixFormat};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Matrix the selection was made from
    #[arg(long)]
    input: PathBuf,
    /// Selection result JSON to score
    #[arg(long)]
    result: PathBuf,
    /// Random selections averaged into the ratio denominator
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    has_header: bool,
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

pub fn run(args: EvalArgs) -> CliResult<i32> {
    let a = read_matrix(&args.input, args.format, args.has_header)?;
    let doc = subsel::io::read_result(&args.result)?;
    let k = doc.indices.len();

    let error = projection_error(&a, &doc.indices)?;
    let mut random_total = 0.0;
    for t in 0..args.trials {
        let r = random_select(&a, k, mix_seed(args.seed, t as u64))?;
        random_total += projection_error(&a, &r.indices)?;
    }
    let random_mean = random_total / args.trials.max(1) as f64;
    // A selection that spans the row space has zero error; report the ratio
    // as zero rather than dividing roundoff by roundoff.
    let tiny = 1e-12 * a.frobenius_sq();
    let ratio = if error <= tiny {
        0.0
    } else {
        error / random_mean
    };
    let best = best_rank_k_error(&a, k)?;

    println!("method: {}", doc.method);
    println!("k: {k}");
    println!("projection_error: {error}");
    println!(
        "random_mean_error: {random_mean} (trials = {})",
        args.trials
    );
    println!("error_ratio_vs_random: {ratio}");
    println!("best_rank_k_error: {best}");
    Ok(0)
}
