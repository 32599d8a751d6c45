//! Cluster-then-pick: seeded k-means++ into K clusters, then one
//! representative per cluster by a configurable inner rule.

use std::time::Instant;

use ndarray::Array1;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;
use crate::selection::{ipm_select, IpmOptions, SelectionResult, StoppingRule};

const KMEANS_MAX_ITERS: usize = 100;

/// How to choose the representative inside each cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerPick {
    /// Seeded uniform draw from the cluster members.
    Random,
    /// Member minimizing the summed distance to the rest of the cluster.
    Medoid,
    /// One-row IPM selection restricted to the cluster members.
    Ipm,
}

/// k-means++ clustering into `k` groups followed by one pick per cluster.
/// Empty clusters are skipped, so fewer than `k` indices may come back.
pub fn cluster_pick_select(
    a: &DataMatrix,
    k: usize,
    inner: InnerPick,
    seed: u64,
) -> Result<SelectionResult> {
    let m = a.nrows();
    if k > m || k == 0 {
        return Err(Error::InfeasibleK { k, m });
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignment = kmeans(a, k, &mut rng);

    let mut result = SelectionResult::new("clusterpick");
    for c in 0..k {
        let members: Vec<usize> = (0..m).filter(|&i| assignment[i] == c).collect();
        if members.is_empty() {
            continue;
        }
        let pick = match inner {
            InnerPick::Random => members[rng.random_range(0..members.len())],
            InnerPick::Medoid => cluster_medoid(a, &members),
            InnerPick::Ipm => {
                let rows: Vec<Vec<f64>> = members.iter().map(|&i| a.row(i).to_vec()).collect();
                let sub = DataMatrix::from_rows(&rows)?;
                let r = ipm_select(&sub, &StoppingRule::max_selected(1), &IpmOptions::default());
                match r.indices.first() {
                    Some(&local) => members[local],
                    None => continue, // all-zero cluster
                }
            }
        };
        result.indices.push(pick);
    }
    result.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

fn cluster_medoid(a: &DataMatrix, members: &[usize]) -> usize {
    let mut best = (members[0], f64::INFINITY);
    for &i in members {
        let total: f64 = members
            .iter()
            .map(|&j| {
                let diff = &a.row(i) - &a.row(j);
                diff.dot(&diff).sqrt()
            })
            .sum();
        if total < best.1 {
            best = (i, total);
        }
    }
    best.0
}

/// Lloyd iterations from a k-means++ initialization; assignment ties go to
/// the lowest centroid id, and a centroid that loses all members keeps its
/// previous position.
fn kmeans(a: &DataMatrix, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let m = a.nrows();
    let n = a.ncols();
    let mut centroids: Vec<Array1<f64>> = Vec::with_capacity(k);
    centroids.push(a.row(rng.random_range(0..m)).to_owned());
    let mut dist_sq = vec![0.0f64; m];
    while centroids.len() < k {
        let mut total = 0.0;
        for (i, slot) in dist_sq.iter_mut().enumerate() {
            let d = centroids
                .iter()
                .map(|c| {
                    let diff = &a.row(i) - c;
                    diff.dot(&diff)
                })
                .fold(f64::INFINITY, f64::min);
            *slot = d;
            total += d;
        }
        let next = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = m - 1;
            for (i, &d) in dist_sq.iter().enumerate() {
                acc += d;
                if target < acc {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            rng.random_range(0..m)
        };
        centroids.push(a.row(next).to_owned());
    }

    let mut assignment = vec![0usize; m];
    for _ in 0..KMEANS_MAX_ITERS {
        let mut changed = false;
        for (i, slot) in assignment.iter_mut().enumerate() {
            let mut best = (0usize, f64::INFINITY);
            for (c, centroid) in centroids.iter().enumerate() {
                let diff = &a.row(i) - centroid;
                let d = diff.dot(&diff);
                if d < best.1 {
                    best = (c, d);
                }
            }
            if *slot != best.0 {
                *slot = best.0;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums: Vec<Array1<f64>> = vec![Array1::zeros(n); k];
        let mut counts = vec![0usize; k];
        for i in 0..m {
            sums[assignment[i]].scaled_add(1.0, &a.row(i));
            counts[assignment[i]] += 1;
        }
        for c in 0..k {
            if counts[c] > 0 {
                centroids[c] = &sums[c] / counts[c] as f64;
            }
        }
    }
    assignment
}
