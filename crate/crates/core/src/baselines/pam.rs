//! k-medoids by PAM: greedy BUILD, then best-improvement SWAP passes over
//! all (medoid, candidate) pairs until no swap lowers the summed distance
//! or the swap cap is reached.

use std::time::Instant;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::SelectionResult;

/// PAM k-medoids on Euclidean row distances. `seed` is accepted for
/// interface symmetry with the other baselines; BUILD and SWAP are
/// deterministic, so it is unused.
pub fn kmedoids_select(
    a: &DataMatrix,
    k: usize,
    _seed: u64,
    max_swaps: usize,
) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m {
        return Err(Error::InfeasibleK { k, m });
    }
    let start = Instant::now();
    let mut result = SelectionResult::new("kmedoids");
    if k == 0 {
        return Ok(result);
    }

    let dist = pairwise_distances(a);
    let mut medoids = build(&dist, k);
    swap(&dist, &mut medoids, max_swaps);

    result.indices = medoids;
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

fn pairwise_distances(a: &DataMatrix) -> Array2<f64> {
    let m = a.nrows();
    let mut d = Array2::zeros((m, m));
    for i in 0..m {
        for j in (i + 1)..m {
            let diff = &a.row(i) - &a.row(j);
            let dij = diff.dot(&diff).sqrt();
            d[[i, j]] = dij;
            d[[j, i]] = dij;
        }
    }
    d
}

fn build(dist: &Array2<f64>, k: usize) -> Vec<usize> {
    let m = dist.nrows();
    let mut medoids: Vec<usize> = Vec::with_capacity(k);
    // nearest[j] = distance from j to its closest chosen medoid
    let mut nearest = vec![f64::INFINITY; m];
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for cand in 0..m {
            if medoids.contains(&cand) {
                continue;
            }
            let total: f64 = (0..m).map(|j| nearest[j].min(dist[[cand, j]])).sum();
            if best.is_none_or(|(_, t)| total < t) {
                best = Some((cand, total));
            }
        }
        let (pick, _) = best.expect("k <= m leaves a candidate");
        medoids.push(pick);
        for j in 0..m {
            nearest[j] = nearest[j].min(dist[[pick, j]]);
        }
    }
    medoids
}

fn swap(dist: &Array2<f64>, medoids: &mut [usize], max_swaps: usize) {
    let m = dist.nrows();
    let k = medoids.len();
    if k == m {
        return;
    }
    for _ in 0..max_swaps {
        // Distance to nearest and second-nearest medoid per point, so each
        // candidate swap costs O(M) to evaluate.
        let (near_med, near_d, seco_d) = assignments(dist, medoids);
        let mut best: Option<(usize, usize, f64)> = None;
        for slot in 0..k {
            for cand in 0..m {
                if medoids.contains(&cand) {
                    continue;
                }
                let mut delta = 0.0;
                for j in 0..m {
                    let dcj = dist[[cand, j]];
                    let new_d = if near_med[j] == slot {
                        seco_d[j].min(dcj)
                    } else {
                        near_d[j].min(dcj)
                    };
                    delta += new_d - near_d[j];
                }
                if delta < best.map_or(0.0, |(_, _, d)| d) {
                    best = Some((slot, cand, delta));
                }
            }
        }
        match best {
            Some((slot, cand, _)) => medoids[slot] = cand,
            None => break,
        }
    }
}

fn assignments(dist: &Array2<f64>, medoids: &[usize]) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
    let m = dist.nrows();
    let mut near_med = vec![0usize; m];
    let mut near_d = vec![f64::INFINITY; m];
    let mut seco_d = vec![f64::INFINITY; m];
    for j in 0..m {
        for (slot, &med) in medoids.iter().enumerate() {
            let d = dist[[med, j]];
            if d < near_d[j] {
                seco_d[j] = near_d[j];
                near_d[j] = d;
                near_med[j] = slot;
            } else if d < seco_d[j] {
                seco_d[j] = d;
            }
        }
    }
    (near_med, near_d, seco_d)
}
