//! Comparison selection methods: random, uniform, k-medoids (PAM),
//! exact volume sampling, determinant-greedy, QR with column pivoting,
//! and cluster-then-pick.

mod cluster;
mod pam;
mod qrcp;
mod volume;

pub use cluster::{cluster_pick_select, InnerPick};
pub use pam::kmedoids_select;
pub use qrcp::qrcp_select;
pub use volume::{volume_select, DEFAULT_ENUMERATION_CAP};

pub(crate) use volume::{binomial_exceeds, enumerate_weighted_subsets};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::SelectionResult;

/// Which baseline to run, with its method-specific knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Random,
    Uniform,
    Kmedoids,
    VolumeExact,
    DetGreedy,
    Qrcp,
    ClusterPick,
}

/// Baseline configuration: a method plus the seed and parameters it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineSpec {
    pub method: Method,
    pub seed: u64,
    /// Swap-iteration cap for k-medoids.
    pub max_swaps: usize,
    /// Per-cluster pick rule for cluster-then-pick.
    pub inner: InnerPick,
    /// Subset count above which exact volume sampling falls back to
    /// determinant-greedy.
    pub enumeration_cap: usize,
}

impl BaselineSpec {
    pub fn new(method: Method, seed: u64) -> Self {
        Self {
            method,
            seed,
            max_swaps: 100,
            inner: InnerPick::Medoid,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Runs the configured method, selecting `k` rows of `a`.
    pub fn run(&self, a: &DataMatrix, k: usize) -> Result<SelectionResult> {
        match self.method {
            Method::Random => random_select(a, k, self.seed),
            Method::Uniform => Ok(uniform_select(a.nrows(), k)),
            Method::Kmedoids => kmedoids_select(a, k, self.seed, self.max_swaps),
            Method::VolumeExact => volume_select(a, k, self.seed, self.enumeration_cap),
            Method::DetGreedy => det_greedy_select(a, k),
            Method::Qrcp => qrcp_select(a, k),
            Method::ClusterPick => cluster_pick_select(a, k, self.inner, self.seed),
        }
    }
}

/// Uniform sample of `k` distinct row indices.
pub fn random_select(a: &DataMatrix, k: usize, seed: u64) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m {
        return Err(Error::InfeasibleK { k, m });
    }
    let start = Instant::now();
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let indices = rand::seq::index::sample(&mut rng, m, k).into_vec();
    let mut result = SelectionResult::new("random");
    result.indices = indices;
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Evenly spaced indices `round(i (M-1) / (K-1))`, deduplicated;
/// `k = 1` picks index 0.
pub fn uniform_select(m: usize, k: usize) -> SelectionResult {
    let start = Instant::now();
    let mut result = SelectionResult::new("uniform");
    if m == 0 || k == 0 {
        return result;
    }
    if k == 1 {
        result.indices.push(0);
    } else {
        let mut seen = vec![false; m];
        for i in 0..k {
            let idx = (i as f64 * (m - 1) as f64 / (k - 1) as f64).round() as usize;
            let idx = idx.min(m - 1);
            if !seen[idx] {
                seen[idx] = true;
                result.indices.push(idx);
            }
        }
    }
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    result
}

/// Greedy determinant maximization: each step adds the row with the largest
/// residual norm against the span of the rows already chosen, which
/// multiplies the Gram determinant by that squared norm. Ties go to the
/// lowest index.
pub fn det_greedy_select(a: &DataMatrix, k: usize) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m {
        return Err(Error::InfeasibleK { k, m });
    }
    let start = Instant::now();
    let mut result = SelectionResult::new("detgreedy");
    let mut residual = a.array().clone();
    let mut taken = vec![false; m];
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for (idx, &is_taken) in taken.iter().enumerate() {
            if is_taken {
                continue;
            }
            let norm_sq = residual.row(idx).dot(&residual.row(idx));
            if best.is_none_or(|(_, s)| norm_sq > s) {
                best = Some((idx, norm_sq));
            }
        }
        let (pick, norm_sq) = best.expect("k <= m leaves a candidate");
        taken[pick] = true;
        result.indices.push(pick);
        if norm_sq > 0.0 {
            let direction = residual.row(pick).to_owned() / norm_sq.sqrt();
            crate::linalg::deflate_in_place(&mut residual, direction.view());
        }
        result
            .residual_energies
            .push(residual.iter().map(|x| x * x).sum());
    }
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}
