use std::path::PathBuf;

use clap::Args;
use subsel::datagen::{generate, SynthKind, SynthSpec};

use crate::common::{write_matrix, CliError, CliResult, MatrixFormat};

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// JSON file holding a full dataset spec (exclusive with --kind)
    #[arg(long)]
    config: Option<PathBuf>,
    /// subspace-union | gaussian-clusters | controlled-spectrum
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Rows, including outliers
    #[arg(long)]
    m: Option<usize>,
    /// Columns
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    subspaces: Option<usize>,
    /// Dimension of each subspace
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    clusters: Option<usize>,
    /// Within-cluster standard deviation
    #[arg(long)]
    spread: Option<f64>,
    /// Comma-separated target singular values
    #[arg(long, value_delimiter = ',')]
    sigmas: Option<Vec<f64>>,
    /// Additive Gaussian noise level
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Outlier rows appended at the end, labeled -1
    #[arg(long, default_value_t = 0)]
    outliers: usize,
    /// Outlier norm as a multiple of the mean structured-row norm
    #[arg(long, default_value_t = 5.0)]
    outlier_scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output matrix path (CSV or .bin)
    #[arg(long)]
    output: PathBuf,
    /// Labels sidecar path; defaults to the output stem plus `.labels.csv`
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<MatrixFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    SubspaceUnion,
    GaussianClusters,
    ControlledSpectrum,
}

pub fn run(args: SynthArgs) -> CliResult<i32> {
    let spec = build_spec(&args)?;
    let (a, labels) = generate(&spec)?;
    write_matrix(&a, &args.output, args.format)?;
    let labels_path = args.labels.clone().unwrap_or_else(|| {
        let mut name = args.output.file_stem().unwrap_or_default().to_os_string();
        name.push(".labels.csv");
        args.output.with_file_name(name)
    });
    subsel::io::write_labels(&labels, &labels_path)?;
    eprintln!(
        "wrote {}x{} matrix to {} and labels to {}",
        a.nrows(),
        a.ncols(),
        args.output.display(),
        labels_path.display()
    );
    Ok(0)
}

fn build_spec(args: &SynthArgs) -> CliResult<SynthSpec> {
    match (&args.config, &args.kind) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--config and --kind are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage("need either --config or --kind".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
        }
        (None, Some(kind)) => {
            let m = args
                .m
                .ok_or_else(|| CliError::Usage("--kind needs --m".into()))?;
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("--kind needs --n".into()))?;
            let kind = match kind {
                KindArg::SubspaceUnion => SynthKind::SubspaceUnion {
                    subspaces: args.subspaces.ok_or_else(|| {
                        CliError::Usage("subspace-union needs --subspaces".into())
                    })?,
                    dim: args
                        .dim
                        .ok_or_else(|| CliError::Usage("subspace-union needs --dim".into()))?,
                },
                KindArg::GaussianClusters => SynthKind::GaussianClusters {
                    clusters: args.clusters.ok_or_else(|| {
                        CliError::Usage("gaussian-clusters needs --clusters".into())
                    })?,
                    spread: args.spread.ok_or_else(|| {
                        CliError::Usage("gaussian-clusters needs --spread".into())
                    })?,
                },
                KindArg::ControlledSpectrum => SynthKind::ControlledSpectrum {
                    singular_values: args.sigmas.clone().ok_or_else(|| {
                        CliError::Usage("controlled-spectrum needs --sigmas".into())
                    })?,
                },
            };
            Ok(SynthSpec {
                kind,
                rows: m,
                cols: n,
                noise_sigma: args.noise,
                outlier_count: args.outliers,
                outlier_scale: args.outlier_scale,
                seed: args.seed,
            })
        }
    }
}
