//! Seeded synthetic matrix generators for benchmarks and property sweeps.

use ndarray::{Array1, Array2};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::OrthonormalBasis;
use crate::matrix::DataMatrix;

/// Label assigned to injected outlier rows.
pub const OUTLIER_LABEL: i64 = -1;

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 finalizer); grids and sweeps use it so every cell gets its
/// own reproducible stream.
pub fn mix_seed(base: u64, salt: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9E3779B97F4A7C15)
        .wrapping_add(salt.wrapping_mul(0xBF58476D1CE4E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Structure of the generated data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SynthKind {
    /// Points drawn from a union of random low-dimensional subspaces,
    /// assigned round-robin; labels are subspace ids.
    SubspaceUnion { subspaces: usize, dim: usize },
    /// Isotropic Gaussian blobs around random centers; `spread` is the
    /// within-cluster standard deviation and labels are cluster ids.
    GaussianClusters { clusters: usize, spread: f64 },
    /// `U diag(σ) Vᵀ` from seeded orthonormal factors with exactly the
    /// requested singular values; labels are all zero.
    ControlledSpectrum { singular_values: Vec<f64> },
}

/// Full description of a synthetic dataset. The last `outlier_count` of the
/// `rows` are replaced by outliers: isotropic Gaussian directions scaled to
/// `outlier_scale` times the mean structured-row norm, labeled -1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    #[serde(flatten)]
    pub kind: SynthKind,
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub noise_sigma: f64,
    #[serde(default)]
    pub outlier_count: usize,
    #[serde(default = "default_outlier_scale")]
    pub outlier_scale: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_outlier_scale() -> f64 {
    1.0
}

/// [`SynthKind`] plus noise/outlier settings but no size or seed; benchmark
/// grids materialize it once per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorProfile {
    #[serde(flatten)]
    pub kind: SynthKind,
    #[serde(default)]
    pub noise_sigma: f64,
    #[serde(default)]
    pub outlier_count: usize,
    #[serde(default = "default_outlier_scale")]
    pub outlier_scale: f64,
}

impl GeneratorProfile {
    pub fn materialize(&self, rows: usize, cols: usize, seed: u64) -> SynthSpec {
        SynthSpec {
            kind: self.kind.clone(),
            rows,
            cols,
            noise_sigma: self.noise_sigma,
            outlier_count: self.outlier_count,
            outlier_scale: self.outlier_scale,
            seed,
        }
    }
}

/// Generates the matrix and per-row ground-truth labels described by `spec`.
/// One ChaCha stream seeded from `spec.seed` drives every draw in a fixed
/// order, so equal specs give bit-identical outputs.
pub fn generate(spec: &SynthSpec) -> Result<(DataMatrix, Vec<i64>)> {
    if spec.rows == 0 || spec.cols == 0 {
        return Err(Error::InvalidParameter(
            "rows and cols must be at least 1".into(),
        ));
    }
    if !spec.noise_sigma.is_finite() || spec.noise_sigma < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise_sigma must be nonnegative, got {}",
            spec.noise_sigma
        )));
    }
    if spec.outlier_count >= spec.rows {
        return Err(Error::InvalidParameter(format!(
            "outlier_count {} must leave at least one structured row of {}",
            spec.outlier_count, spec.rows
        )));
    }
    if !spec.outlier_scale.is_finite() || spec.outlier_scale < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "outlier_scale must be nonnegative, got {}",
            spec.outlier_scale
        )));
    }

    let base_rows = spec.rows - spec.outlier_count;
    let n = spec.cols;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut data = Array2::zeros((spec.rows, n));
    let mut labels = vec![0i64; spec.rows];

    match &spec.kind {
        SynthKind::SubspaceUnion { subspaces, dim } => {
            if *subspaces == 0 || *dim == 0 {
                return Err(Error::InvalidParameter(
                    "subspace count and dimension must be at least 1".into(),
                ));
            }
            if *dim > n {
                return Err(Error::InvalidParameter(format!(
                    "subspace dimension {dim} exceeds ambient dimension {n}"
                )));
            }
            let bases: Vec<Array2<f64>> = (0..*subspaces)
                .map(|_| random_orthonormal(&mut rng, n, *dim))
                .collect();
            for (m, label) in labels.iter_mut().enumerate().take(base_rows) {
                let s = m % subspaces;
                let coeffs: Array1<f64> =
                    Array1::from_shape_fn(*dim, |_| rng.sample(StandardNormal));
                let point = bases[s].dot(&coeffs);
                data.row_mut(m).assign(&point);
                *label = s as i64;
            }
        }
        SynthKind::GaussianClusters { clusters, spread } => {
            if *clusters == 0 {
                return Err(Error::InvalidParameter(
                    "cluster count must be at least 1".into(),
                ));
            }
            if *clusters > base_rows {
                return Err(Error::InvalidParameter(format!(
                    "cluster count {clusters} exceeds structured row count {base_rows}"
                )));
            }
            if !spread.is_finite() || *spread < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "spread must be nonnegative, got {spread}"
                )));
            }
            let centers: Vec<Array1<f64>> = (0..*clusters)
                .map(|_| Array1::from_shape_fn(n, |_| rng.sample::<f64, _>(StandardNormal)))
                .collect();
            for (m, label) in labels.iter_mut().enumerate().take(base_rows) {
                let c = m % clusters;
                let point = Array1::from_shape_fn(n, |j| {
                    centers[c][j] + spread * rng.sample::<f64, _>(StandardNormal)
                });
                data.row_mut(m).assign(&point);
                *label = c as i64;
            }
        }
        SynthKind::ControlledSpectrum { singular_values } => {
            let r = singular_values.len();
            if r == 0 || r > base_rows.min(n) {
                return Err(Error::InvalidParameter(format!(
                    "need 1..=min(rows - outliers, cols) = {} singular values, got {r}",
                    base_rows.min(n)
                )));
            }
            if singular_values.iter().any(|s| !s.is_finite() || *s < 0.0) {
                return Err(Error::InvalidParameter(
                    "singular values must be finite and nonnegative".into(),
                ));
            }
            let u = random_orthonormal(&mut rng, base_rows, r);
            let v = random_orthonormal(&mut rng, n, r);
            for m in 0..base_rows {
                for j in 0..n {
                    let mut x = 0.0;
                    for t in 0..r {
                        x += u[[m, t]] * singular_values[t] * v[[j, t]];
                    }
                    data[[m, j]] = x;
                }
            }
        }
    }

    if spec.noise_sigma > 0.0 {
        for m in 0..base_rows {
            for j in 0..n {
                data[[m, j]] += spec.noise_sigma * rng.sample::<f64, _>(StandardNormal);
            }
        }
    }

    if spec.outlier_count > 0 {
        let mean_norm = (0..base_rows)
            .map(|m| data.row(m).dot(&data.row(m)).sqrt())
            .sum::<f64>()
            / base_rows as f64;
        for (m, label) in labels.iter_mut().enumerate().skip(base_rows) {
            let g: Array1<f64> = Array1::from_shape_fn(n, |_| rng.sample(StandardNormal));
            let norm = g.dot(&g).sqrt();
            let row = if norm > 0.0 {
                g * (spec.outlier_scale * mean_norm / norm)
            } else {
                g
            };
            data.row_mut(m).assign(&row);
            *label = OUTLIER_LABEL;
        }
    }

    Ok((DataMatrix::new(data)?, labels))
}

/// Eigenvalue sequence with strictly decreasing consecutive gaps, the
/// hypothesis under which the leading eigenvector has the smallest
/// sensitivity coefficient.
pub fn decreasing_gap_eigenvalues(count: usize, seed: u64) -> Vec<f64> {
    assert!(count >= 2, "need at least two eigenvalues");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Strictly decreasing positive gaps: random positive increments sorted
    // descending, separated by distinct geometric factors.
    let mut gaps: Vec<f64> = (0..count - 1)
        .map(|i| (1.0 + rng.random::<f64>()) * 0.7f64.powi(i as i32))
        .collect();
    gaps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let smallest = *gaps.last().unwrap();
    let mut values = vec![gaps.iter().sum::<f64>() + smallest];
    for g in &gaps {
        let prev = *values.last().unwrap();
        values.push(prev - g);
    }
    values
}

fn random_orthonormal(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Array2<f64> {
    assert!(
        cols <= rows,
        "cannot build {cols} orthonormal vectors in R^{rows}"
    );
    let mut basis = OrthonormalBasis::new(rows);
    while basis.len() < cols {
        let v: Array1<f64> = Array1::from_shape_fn(rows, |_| rng.sample(StandardNormal));
        basis.extend(v.view(), 1e-8);
    }
    basis.as_matrix()
}
