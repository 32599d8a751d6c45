//! Iterative projection and matching (IPM): greedy selection of rows whose
//! span captures the most matrix energy, plus the compound variant that
//! blends the correlation score with an external per-sample score.
//!
//! Each round finds the leading right singular direction of the current
//! residual matrix, picks the live row whose normalized residual is most
//! correlated with that direction, and projects every row onto the null
//! space of the pick. Selected rows therefore have exactly zero residual
//! afterwards and can never be re-selected.

use std::time::Instant;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{deflate_in_place, power_iterate};
use crate::matrix::DataMatrix;

/// Outcome of a selection run: the chosen row indices in selection order
/// plus the per-iteration trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    /// Name of the method that produced this result.
    pub method: String,
    /// Selected row indices, in selection order.
    pub indices: Vec<usize>,
    /// Leading singular value of the residual matrix at each iteration
    /// (empty for methods that do not track a residual).
    pub sigmas: Vec<f64>,
    /// Squared Frobenius norm of the residual after each selection.
    pub residual_energies: Vec<f64>,
    /// Wall-clock time of the run in seconds.
    pub elapsed_seconds: f64,
}

impl SelectionResult {
    pub(crate) fn new(method: impl Into<String>) -> Self {
        Self {
            method: method.into(),
            indices: Vec::new(),
            sigmas: Vec::new(),
            residual_energies: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }

    /// Number of selected rows.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Termination rule for [`ipm_select`]: a target count, a residual-energy
/// fraction of `‖A‖²_F`, or both (whichever trips first).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoppingRule {
    k_max: Option<usize>,
    residual_fraction: Option<f64>,
}

impl StoppingRule {
    /// Stop after selecting `k` rows.
    pub fn max_selected(k: usize) -> Self {
        Self {
            k_max: Some(k),
            residual_fraction: None,
        }
    }

    /// Stop once residual energy drops to `fraction * ‖A‖²_F`;
    /// `fraction` must lie in (0, 1].
    pub fn residual_fraction(fraction: f64) -> Result<Self> {
        Self::new(None, Some(fraction))
    }

    /// General constructor; at least one criterion must be set.
    pub fn new(k_max: Option<usize>, residual_fraction: Option<f64>) -> Result<Self> {
        if k_max.is_none() && residual_fraction.is_none() {
            return Err(Error::InvalidParameter(
                "stopping rule needs a count or a residual fraction".into(),
            ));
        }
        if let Some(f) = residual_fraction {
            if !(f > 0.0 && f <= 1.0) || !f.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "residual fraction must be in (0, 1], got {f}"
                )));
            }
        }
        Ok(Self {
            k_max,
            residual_fraction,
        })
    }

    pub fn k_max(&self) -> Option<usize> {
        self.k_max
    }

    pub fn fraction(&self) -> Option<f64> {
        self.residual_fraction
    }
}

/// Numerical knobs for the IPM loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IpmOptions {
    /// Convergence tolerance of the inner power iteration.
    pub power_tol: f64,
    /// Iteration cap of the inner power iteration.
    pub power_max_iter: usize,
    /// Seed for the power-iteration start vectors.
    pub seed: u64,
    /// A row is dead once its residual norm falls below
    /// `spanned_eps * original norm`.
    pub spanned_eps: f64,
}

impl Default for IpmOptions {
    fn default() -> Self {
        Self {
            power_tol: 1e-9,
            power_max_iter: 1000,
            seed: 0,
            spanned_eps: 1e-8,
        }
    }
}

/// Settings for the compound criterion: blend weight schedule and the
/// per-sample scores `q`.
///
/// The matching step maximizes `alpha * |vᵀ r̃ₘ| + (1 - alpha) * q[m]`; the
/// scores are consumed as given, so any range harmonization against the
/// correlation term (which lives in [0, 1]) is the caller's job. `alpha`
/// starts at `alpha0` and is multiplied by `decay` after every selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompoundOptions {
    alpha0: f64,
    decay: f64,
    scores: Vec<f64>,
}

impl CompoundOptions {
    pub fn new(alpha0: f64, decay: f64, scores: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha0) || !alpha0.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha0 must be in [0, 1], got {alpha0}"
            )));
        }
        if !(decay > 0.0 && decay <= 1.0) || !decay.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "decay must be in (0, 1], got {decay}"
            )));
        }
        if let Some(bad) = scores.iter().find(|q| !q.is_finite() || **q < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scores must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(Self {
            alpha0,
            decay,
            scores,
        })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }
}

/// Greedy projection-and-matching selection.
///
/// Runs until the stopping rule trips or every row is spanned by the
/// selection. A numerically zero input yields an empty selection. A
/// requested count larger than the number of usable rows truncates.
pub fn ipm_select(a: &DataMatrix, stop: &StoppingRule, opts: &IpmOptions) -> SelectionResult {
    ipm_engine(a, stop.k_max, stop.residual_fraction, None, opts, "ipm")
}

/// IPM with the compound matching criterion.
///
/// `scores` length must equal the row count of `a`.
pub fn ipm_select_compound(
    a: &DataMatrix,
    k: usize,
    copts: &CompoundOptions,
    opts: &IpmOptions,
) -> Result<SelectionResult> {
    if copts.scores.len() != a.nrows() {
        return Err(Error::InvalidParameter(format!(
            "scores length {} does not match row count {}",
            copts.scores.len(),
            a.nrows()
        )));
    }
    Ok(ipm_engine(
        a,
        Some(k),
        None,
        Some(copts),
        opts,
        "ipm-compound",
    ))
}

fn ipm_engine(
    a: &DataMatrix,
    k_max: Option<usize>,
    residual_fraction: Option<f64>,
    compound: Option<&CompoundOptions>,
    opts: &IpmOptions,
    method: &str,
) -> SelectionResult {
    let start = Instant::now();
    let mut result = SelectionResult::new(method);

    let m = a.nrows();
    let orig_norms = a.row_norms();
    let total_energy = a.frobenius_sq();
    let mut residual: Array2<f64> = a.array().clone();
    let mut live: Vec<bool> = orig_norms.iter().map(|&n| n > 0.0).collect();
    let mut alpha = compound.map(|c| c.alpha0).unwrap_or(1.0);
    let limit = k_max.unwrap_or(m);

    while result.indices.len() < limit {
        if !live.iter().any(|&l| l) {
            break;
        }
        let triplet = power_iterate(&residual, opts.power_tol, opts.power_max_iter, opts.seed);
        if triplet.is_zero {
            break;
        }

        let row_norms: Vec<f64> = residual
            .rows()
            .into_iter()
            .map(|r| r.dot(&r).sqrt())
            .collect();
        let mut best: Option<(usize, f64)> = None;
        for idx in 0..m {
            if !live[idx] || row_norms[idx] == 0.0 {
                continue;
            }
            let corr = residual.row(idx).dot(&triplet.right).abs() / row_norms[idx];
            let score = match compound {
                None => corr,
                Some(c) => alpha * corr + (1.0 - alpha) * c.scores[idx],
            };
            // Strict comparison keeps the lowest index on ties.
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((idx, score));
            }
        }
        let Some((pick, _)) = best else {
            break;
        };

        let direction = residual.row(pick).to_owned() / row_norms[pick];
        result.indices.push(pick);
        result.sigmas.push(triplet.sigma);
        deflate_in_place(&mut residual, direction.view());

        let mut energy = 0.0;
        for (idx, row) in residual.rows().into_iter().enumerate() {
            let norm_sq = row.dot(&row);
            energy += norm_sq;
            if live[idx] && norm_sq.sqrt() <= opts.spanned_eps * orig_norms[idx] {
                live[idx] = false;
            }
        }
        result.residual_energies.push(energy);
        alpha *= compound.map(|c| c.decay).unwrap_or(1.0);

        if let Some(f) = residual_fraction {
            if energy <= f * total_energy {
                break;
            }
        }
    }

    result.elapsed_seconds = start.elapsed().as_secs_f64();
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array2};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_matrix(m: usize, n: usize, seed: u64) -> DataMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DataMatrix::new(Array2::from_shape_fn((m, n), |_| {
            rng.sample(StandardNormal)
        }))
        .unwrap()
    }

    #[test]
    fn picks_dominant_axis_row() {
        let a = DataMatrix::new(array![[3.0, 0.0], [0.0, 1.0]]).unwrap();
        let r = ipm_select(&a, &StoppingRule::max_selected(1), &IpmOptions::default());
        assert_eq!(r.indices, vec![0]);
        assert!((r.sigmas[0] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn full_rank_selection_exhausts_energy() {
        let a = random_matrix(5, 4, 11);
        let r = ipm_select(&a, &StoppingRule::max_selected(4), &IpmOptions::default());
        assert_eq!(r.len(), 4);
        let last = *r.residual_energies.last().unwrap();
        assert!(last <= 1e-10 * a.frobenius_sq());
    }

    #[test]
    fn zero_matrix_selects_nothing() {
        let a = DataMatrix::new(Array2::zeros((4, 3))).unwrap();
        let r = ipm_select(&a, &StoppingRule::max_selected(2), &IpmOptions::default());
        assert!(r.indices.is_empty());
        assert!(r.residual_energies.is_empty());
    }

    #[test]
    fn oversized_request_truncates() {
        let a = random_matrix(3, 5, 2);
        let r = ipm_select(&a, &StoppingRule::max_selected(10), &IpmOptions::default());
        assert_eq!(r.len(), 3);
        let mut sorted = r.indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
    }

    #[test]
    fn residual_energies_non_increasing() {
        let a = random_matrix(8, 4, 5);
        let r = ipm_select(&a, &StoppingRule::max_selected(4), &IpmOptions::default());
        for w in r.residual_energies.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn residual_fraction_stops_early() {
        let a = random_matrix(10, 6, 9);
        let stop = StoppingRule::new(None, Some(0.5)).unwrap();
        let r = ipm_select(&a, &stop, &IpmOptions::default());
        let total = a.frobenius_sq();
        assert!(*r.residual_energies.last().unwrap() <= 0.5 * total);
        // One fewer pick would still be above the threshold.
        if r.len() > 1 {
            assert!(r.residual_energies[r.len() - 2] > 0.5 * total);
        }
    }

    #[test]
    fn stopping_rule_requires_a_criterion() {
        assert!(StoppingRule::new(None, None).is_err());
        assert!(StoppingRule::residual_fraction(0.0).is_err());
        assert!(StoppingRule::residual_fraction(1.5).is_err());
    }

    #[test]
    fn combined_stopping_takes_whichever_trips_first() {
        let a = random_matrix(10, 8, 21);
        // Generous fraction: the count cap trips first.
        let stop = StoppingRule::new(Some(2), Some(1e-12)).unwrap();
        assert_eq!(ipm_select(&a, &stop, &IpmOptions::default()).len(), 2);
        // Generous count: the energy threshold trips first.
        let stop = StoppingRule::new(Some(8), Some(0.9)).unwrap();
        let r = ipm_select(&a, &stop, &IpmOptions::default());
        assert!(r.len() < 8);
        assert!(*r.residual_energies.last().unwrap() <= 0.9 * a.frobenius_sq());
    }

    #[test]
    fn compound_reduces_to_plain_with_alpha_one() {
        let a = random_matrix(7, 4, 3);
        let scores: Vec<f64> = (0..7).map(|i| i as f64 / 7.0).collect();
        let copts = CompoundOptions::new(1.0, 1.0, scores).unwrap();
        let plain = ipm_select(&a, &StoppingRule::max_selected(4), &IpmOptions::default());
        let comp = ipm_select_compound(&a, 4, &copts, &IpmOptions::default()).unwrap();
        assert_eq!(plain.indices, comp.indices);
    }

    #[test]
    fn compound_alpha_zero_is_descending_q() {
        let a = random_matrix(6, 8, 4);
        let scores = vec![0.3, 0.9, 0.1, 0.7, 0.5, 0.2];
        let copts = CompoundOptions::new(0.0, 0.95, scores.clone()).unwrap();
        let r = ipm_select_compound(&a, 4, &copts, &IpmOptions::default()).unwrap();
        let mut order: Vec<usize> = (0..6).collect();
        order.sort_by(|&i, &j| scores[j].partial_cmp(&scores[i]).unwrap());
        assert_eq!(r.indices, order[..4].to_vec());
    }

    #[test]
    fn compound_rejects_bad_options() {
        assert!(CompoundOptions::new(1.5, 0.95, vec![0.0]).is_err());
        assert!(CompoundOptions::new(0.5, 0.0, vec![0.0]).is_err());
        assert!(CompoundOptions::new(0.5, 0.95, vec![-1.0]).is_err());
        let a = random_matrix(3, 3, 0);
        let copts = CompoundOptions::new(0.5, 0.95, vec![0.0; 2]).unwrap();
        assert!(ipm_select_compound(&a, 2, &copts, &IpmOptions::default()).is_err());
    }
}
