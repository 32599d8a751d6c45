//! Exact volume sampling at desk scale: enumerate every K-row subset,
//! weight it by det(A_T A_Tᵀ), and draw one subset from that distribution.
//! Above the enumeration cap the method falls back to determinant-greedy.

use std::time::Instant;

use ndarray::Array1;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::SelectionResult;

/// Default bound on the number of enumerated subsets.
pub const DEFAULT_ENUMERATION_CAP: usize = 200_000;

/// Draws one K-subset with probability proportional to its squared volume
/// det(A_T A_Tᵀ). Falls back to determinant-greedy (method tag
/// `"volume(detgreedy-fallback)"`) when C(M, K) exceeds `enumeration_cap`.
pub fn volume_select(
    a: &DataMatrix,
    k: usize,
    seed: u64,
    enumeration_cap: usize,
) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m || k == 0 {
        return Err(Error::InfeasibleK { k, m });
    }
    if binomial_exceeds(m, k, enumeration_cap) {
        let mut result = crate::baselines::det_greedy_select(a, k)?;
        result.method = "volume(detgreedy-fallback)".to_string();
        return Ok(result);
    }
    let start = Instant::now();
    let weighted = enumerate_weighted_subsets(a, k)?;
    let total: f64 = weighted.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return Err(Error::ZeroVolume { k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut chosen = &weighted.last().expect("at least one subset").0;
    for (subset, w) in &weighted {
        acc += w;
        if target < acc {
            chosen = subset;
            break;
        }
    }

    let mut result = SelectionResult::new("volume");
    result.indices = chosen.clone();
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// All K-subsets of rows in lexicographic order with their squared volumes.
/// The weight is computed as the product of squared Gram-Schmidt residual
/// norms, which equals det(A_T A_Tᵀ) and cannot go negative.
pub(crate) fn enumerate_weighted_subsets(
    a: &DataMatrix,
    k: usize,
) -> Result<Vec<(Vec<usize>, f64)>> {
    let m = a.nrows();
    if k > m {
        return Err(Error::InfeasibleK { k, m });
    }
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        out.push((subset.clone(), squared_volume(a, &subset)));
        // Advance to the next lexicographic combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if subset[i] != i + m - k {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

fn squared_volume(a: &DataMatrix, subset: &[usize]) -> f64 {
    let mut basis: Vec<Array1<f64>> = Vec::with_capacity(subset.len());
    let mut det = 1.0;
    for &idx in subset {
        let mut r = a.row(idx).to_owned();
        for q in &basis {
            let c = r.dot(q);
            r.scaled_add(-c, q);
        }
        let norm_sq = r.dot(&r);
        det *= norm_sq;
        if norm_sq == 0.0 {
            return 0.0;
        }
        basis.push(r / norm_sq.sqrt());
    }
    det
}

pub(crate) fn binomial_exceeds(m: usize, k: usize, cap: usize) -> bool {
    let k = k.min(m - k);
    let mut value: u128 = 1;
    for i in 0..k {
        value = value.saturating_mul((m - i) as u128) / (i + 1) as u128;
        if value > cap as u128 {
            return true;
        }
    }
    false
}
