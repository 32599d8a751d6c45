use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the selection, linear algebra, and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("deflation direction must be unit length, got norm {norm}")]
    NotUnitVector { norm: f64 },

    #[error("{rows}x{cols} matrix exceeds the full-spectrum cap of {cap}; use the power-iteration path for large inputs")]
    SpectrumCap {
        rows: usize,
        cols: usize,
        cap: usize,
    },

    #[error("eigenvalues must be strictly distinct; minimum gap {gap} is below {min_gap}")]
    DegenerateSpectrum { gap: f64, min_gap: f64 },

    #[error("cannot select {k} rows out of {m}")]
    InfeasibleK { k: usize, m: usize },

    #[error("all {k}-row subsets have zero volume; matrix rank is below {k}")]
    ZeroVolume { k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Csv {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {msg}")]
    BinaryFormat { path: PathBuf, msg: String },

    #[error("result file {path}: {msg}")]
    ResultFormat { path: PathBuf, msg: String },

    #[error("unknown suite {0:?}; expected one of error-ratio, runtime, lemma, outlier")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
