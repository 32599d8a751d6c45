//! Householder QR with column pivoting applied to Aᵀ, so pivot order ranks
//! the rows of A. Trailing column norms are recomputed exactly at every
//! step rather than downdated; at K pivots the total cost stays O(K M N).

use std::time::Instant;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::SelectionResult;

/// Selects the first `k` pivot rows of the column-pivoted QR factorization
/// of Aᵀ. Ties on the pivot norm go to the lowest original index.
pub fn qrcp_select(a: &DataMatrix, k: usize) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m {
        return Err(Error::InfeasibleK { k, m });
    }
    let start = Instant::now();
    let mut result = SelectionResult::new("qrcp");

    // b has the rows of A as columns.
    let mut b: Array2<f64> = a.array().t().to_owned();
    let n = b.nrows();
    let mut perm: Vec<usize> = (0..m).collect();
    let steps = k.min(n);

    for s in 0..steps {
        // Exact trailing norms; strict comparison keeps the lowest index.
        let mut pivot = s;
        let mut pivot_norm = -1.0;
        for j in s..m {
            let norm_sq: f64 = (s..n).map(|i| b[[i, j]] * b[[i, j]]).sum();
            if norm_sq > pivot_norm {
                pivot_norm = norm_sq;
                pivot = j;
            }
        }
        if pivot != s {
            perm.swap(s, pivot);
            for i in 0..n {
                b.swap([i, s], [i, pivot]);
            }
        }

        // Householder reflector zeroing b[s+1.., s].
        let norm = pivot_norm.max(0.0).sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if b[[s, s]] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (s..n).map(|i| b[[i, s]]).collect();
        v[0] -= alpha;
        let v_norm_sq: f64 = v.iter().map(|x| x * x).sum();
        if v_norm_sq == 0.0 {
            continue;
        }
        for j in s..m {
            let dot: f64 = (s..n).map(|i| v[i - s] * b[[i, j]]).sum();
            let scale = 2.0 * dot / v_norm_sq;
            for i in s..n {
                b[[i, j]] -= scale * v[i - s];
            }
        }
    }

    result.indices = perm[..k].to_vec();
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}
