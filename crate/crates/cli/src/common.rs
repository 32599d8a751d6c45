use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use subsel::baselines::{BaselineSpec, InnerPick, Method};
use subsel::{DataMatrix, IpmOptions, SelectionResult, StoppingRule};

/// CLI failure split by exit code: 2 for usage problems, 1 for data
/// problems.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<subsel::Error> for CliError {
    fn from(e: subsel::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Binary,
}

/// Picks the format from an explicit flag or the file extension
/// (`.bin` means binary, anything else CSV).
pub fn detect_format(path: &Path, explicit: Option<MatrixFormat>) -> MatrixFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("bin") => MatrixFormat::Binary,
        _ => MatrixFormat::Csv,
    })
}

pub fn read_matrix(
    path: &Path,
    explicit: Option<MatrixFormat>,
    has_header: bool,
) -> CliResult<DataMatrix> {
    match detect_format(path, explicit) {
        MatrixFormat::Csv => Ok(subsel::io::read_csv(path, has_header)?),
        MatrixFormat::Binary => Ok(subsel::io::read_binary(path)?),
    }
}

pub fn write_matrix(a: &DataMatrix, path: &Path, explicit: Option<MatrixFormat>) -> CliResult<()> {
    match detect_format(path, explicit) {
        MatrixFormat::Csv => Ok(subsel::io::write_csv(a, path)?),
        MatrixFormat::Binary => Ok(subsel::io::write_binary(a, path)?),
    }
}

/// Selection methods addressable from the command line and bench configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodName {
    Ipm,
    IpmCompound,
    Random,
    Uniform,
    Kmedoids,
    Volume,
    DetGreedy,
    Qrcp,
    ClusterPick,
}

impl MethodName {
    pub const ALL: &'static [&'static str] = &[
        "ipm",
        "ipm-compound",
        "random",
        "uniform",
        "kmedoids",
        "volume",
        "detgreedy",
        "qrcp",
        "clusterpick",
    ];
}

impl FromStr for MethodName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ipm" => Ok(Self::Ipm),
            "ipm-compound" => Ok(Self::IpmCompound),
            "random" => Ok(Self::Random),
            "uniform" => Ok(Self::Uniform),
            "kmedoids" => Ok(Self::Kmedoids),
            "volume" => Ok(Self::Volume),
            "detgreedy" => Ok(Self::DetGreedy),
            "qrcp" => Ok(Self::Qrcp),
            "clusterpick" => Ok(Self::ClusterPick),
            other => Err(CliError::Usage(format!(
                "unknown method {other:?}; expected one of {}",
                Self::ALL.join("|")
            ))),
        }
    }
}

/// Method-specific knobs shared by `select` and `bench`.
#[derive(Debug, Clone, Copy)]
pub struct MethodParams {
    pub max_swaps: usize,
    pub inner: InnerPick,
    pub enumeration_cap: usize,
}

impl Default for MethodParams {
    fn default() -> Self {
        Self {
            max_swaps: 100,
            inner: InnerPick::Medoid,
            enumeration_cap: 200_000,
        }
    }
}

/// Runs any non-compound method. The seed feeds both the baseline draws and
/// the power-iteration start vectors.
pub fn run_method(
    method: MethodName,
    a: &DataMatrix,
    k: usize,
    seed: u64,
    params: &MethodParams,
) -> CliResult<SelectionResult> {
    let result = match method {
        MethodName::Ipm => {
            let opts = IpmOptions {
                seed,
                ..IpmOptions::default()
            };
            subsel::ipm_select(a, &StoppingRule::max_selected(k), &opts)
        }
        MethodName::IpmCompound => {
            return Err(CliError::Usage(
                "ipm-compound needs per-row scores; drive it through `select --scores`".into(),
            ))
        }
        MethodName::Uniform => subsel::baselines::uniform_select(a.nrows(), k),
        MethodName::Random => spec(Method::Random, seed, params).run(a, k)?,
        MethodName::Kmedoids => spec(Method::Kmedoids, seed, params).run(a, k)?,
        MethodName::Volume => spec(Method::VolumeExact, seed, params).run(a, k)?,
        MethodName::DetGreedy => spec(Method::DetGreedy, seed, params).run(a, k)?,
        MethodName::Qrcp => spec(Method::Qrcp, seed, params).run(a, k)?,
        MethodName::ClusterPick => spec(Method::ClusterPick, seed, params).run(a, k)?,
    };
    Ok(result)
}

fn spec(method: Method, seed: u64, params: &MethodParams) -> BaselineSpec {
    let mut s = BaselineSpec::new(method, seed);
    s.max_swaps = params.max_swaps;
    s.inner = params.inner;
    s.enumeration_cap = params.enumeration_cap;
    s
}
