use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Deserialize;
use subsel::baselines::random_select;
use subsel::datagen::{generate, mix_seed, GeneratorProfile};
use subsel::metrics::projection_error;

use crate::common::{run_method, CliError, CliResult, MethodName, MethodParams};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Grid definition JSON: methods, sizes, ks, trials, seed, generator
    #[arg(long)]
    config: PathBuf,
    /// Flat CSV of per-cell measurements
    #[arg(long)]
    output: PathBuf,
}

#[derive(Debug, Deserialize)]
struct BenchConfig {
    methods: Vec<String>,
    sizes: Vec<SizeSpec>,
    ks: Vec<usize>,
    trials: usize,
    #[serde(default)]
    seed: u64,
    generator: GeneratorProfile,
}

#[derive(Debug, Deserialize, Clone, Copy)]
struct SizeSpec {
    #[serde(alias = "M")]
    m: usize,
    #[serde(alias = "N")]
    n: usize,
}

struct Row {
    method: String,
    m: usize,
    n: usize,
    k: usize,
    trial: usize,
    seed: u64,
    error: f64,
    ratio: f64,
    elapsed: f64,
}

pub fn run(args: BenchArgs) -> CliResult<i32> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.config.display())))?;
    let config: BenchConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.config.display())))?;
    let methods: Vec<(String, MethodName)> = config
        .methods
        .iter()
        .map(|name| Ok((name.clone(), name.parse::<MethodName>()?)))
        .collect::<CliResult<_>>()?;
    if methods.iter().any(|(_, m)| *m == MethodName::IpmCompound) {
        return Err(CliError::Usage(
            "ipm-compound is not available in bench grids; it needs external per-row scores".into(),
        ));
    }
    if config.trials == 0 || config.sizes.is_empty() || config.ks.is_empty() || methods.is_empty() {
        return Err(CliError::Usage(
            "bench config needs at least one method, size, k, and trial".into(),
        ));
    }

    let params = MethodParams::default();
    let mut rows: Vec<Row> = Vec::new();
    for (si, size) in config.sizes.iter().enumerate() {
        for trial in 0..config.trials {
            let data_seed = mix_seed(config.seed, ((si as u64) << 32) | trial as u64);
            let spec = config.generator.materialize(size.m, size.n, data_seed);
            let (a, _) = generate(&spec)?;
            let tiny = 1e-12 * a.frobenius_sq();
            for &k in &config.ks {
                // Shared random reference so every method in this cell is
                // normalized against the same draw.
                let ref_seed = mix_seed(data_seed, 0xFA11 + k as u64);
                let reference = random_select(&a, k, ref_seed)?;
                let ref_error = projection_error(&a, &reference.indices)?;
                for (name, method) in &methods {
                    let (error, elapsed) = if *method == MethodName::Random {
                        (ref_error, reference.elapsed_seconds)
                    } else {
                        run_method(*method, &a, k, data_seed, &params)?; // warm-up, discarded
                        let start = Instant::now();
                        let result = run_method(*method, &a, k, data_seed, &params)?;
                        let elapsed = start.elapsed().as_secs_f64();
                        (projection_error(&a, &result.indices)?, elapsed)
                    };
                    let ratio = if ref_error <= tiny {
                        if error <= tiny {
                            1.0
                        } else {
                            f64::INFINITY
                        }
                    } else {
                        error / ref_error
                    };
                    rows.push(Row {
                        method: name.clone(),
                        m: size.m,
                        n: size.n,
                        k,
                        trial,
                        seed: data_seed,
                        error,
                        ratio,
                        elapsed,
                    });
                }
            }
        }
    }

    rows.sort_by(|a, b| {
        (&a.method, a.m, a.n, a.k, a.trial).cmp(&(&b.method, b.m, b.n, b.k, b.trial))
    });
    let file = File::create(&args.output)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.output.display())))?;
    let mut out = BufWriter::new(file);
    let emit = |out: &mut BufWriter<File>, line: String| {
        writeln!(out, "{line}")
            .map_err(|e| CliError::Data(format!("{}: {e}", args.output.display())))
    };
    emit(
        &mut out,
        "method,M,N,K,trial,seed,error,error_ratio_vs_random,elapsed_seconds".into(),
    )?;
    for r in &rows {
        emit(
            &mut out,
            format!(
                "{},{},{},{},{},{},{},{},{}",
                r.method, r.m, r.n, r.k, r.trial, r.seed, r.error, r.ratio, r.elapsed
            ),
        )?;
    }
    out.flush()
        .map_err(|e| CliError::Data(format!("{}: {e}", args.output.display())))?;
    eprintln!("wrote {} rows to {}", rows.len(), args.output.display());
    Ok(0)
}
