//! Objective evaluation and spectral diagnostics: projection error, best
//! rank-K error, rank-oneness measure, eigenvector sensitivity
//! coefficients, and empirical checks of the correlation lower bound, the
//! volume-sampling error bound, and the eigenvector perturbation bound.

use ndarray::Array2;

use crate::baselines::{binomial_exceeds, enumerate_weighted_subsets, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::linalg::{
    full_spectrum, jacobi_eigh, leading_singular_triplet, project_residual, OrthonormalBasis,
};
use crate::matrix::DataMatrix;

/// Eigenvalue gap below which sensitivity coefficients are refused.
pub const MIN_EIGEN_GAP: f64 = 1e-10;

/// Spectral summary of the autocorrelation matrix C = AᵀA.
#[derive(Debug, Clone)]
pub struct SpectrumDiagnostics {
    /// Eigenvalues of AᵀA (squared singular values), descending.
    pub eigenvalues: Vec<f64>,
    /// Rank-oneness measure σ₁ / ‖A‖_F.
    pub rom: f64,
    /// Sensitivity coefficient per eigenvector; `None` when eigenvalues are
    /// too close for the formula to be meaningful.
    pub sensitivities: Option<Vec<f64>>,
}

impl SpectrumDiagnostics {
    pub fn compute(a: &DataMatrix) -> Result<Self> {
        let spectrum = full_spectrum(a)?;
        let eigenvalues = spectrum.eigenvalues();
        let frob = a.frobenius_sq().sqrt();
        if frob == 0.0 {
            return Err(Error::InvalidParameter(
                "rank-oneness measure is undefined for a zero matrix".into(),
            ));
        }
        let rom = spectrum.values[0] / frob;
        let sensitivities = sensitivity_coeffs(&eigenvalues).ok();
        Ok(Self {
            eigenvalues,
            rom,
            sensitivities,
        })
    }
}

/// Energy of `a` left outside the span of the selected rows:
/// `‖A - π_T(A)‖²_F` with `T = indices`. Empty `indices` gives `‖A‖²_F`.
pub fn projection_error(a: &DataMatrix, indices: &[usize]) -> Result<f64> {
    let mut seen = vec![false; a.nrows()];
    for &idx in indices {
        if idx >= a.nrows() {
            return Err(Error::InvalidParameter(format!(
                "index {idx} out of range for {} rows",
                a.nrows()
            )));
        }
        if seen[idx] {
            return Err(Error::InvalidParameter(format!("duplicate index {idx}")));
        }
        seen[idx] = true;
    }
    let mut basis = OrthonormalBasis::new(a.ncols());
    for &idx in indices {
        basis.extend(a.row(idx), 1e-12);
    }
    let (_, energy) = project_residual(a, &basis);
    Ok(energy)
}

/// Energy missed by the best rank-K approximation: the tail sum of squared
/// singular values past K.
pub fn best_rank_k_error(a: &DataMatrix, k: usize) -> Result<f64> {
    let spectrum = full_spectrum(a)?;
    Ok(spectrum.values.iter().skip(k).map(|s| s * s).sum())
}

/// Rank-oneness measure σ₁ / ‖A‖_F, in (0, 1]; equals 1 exactly for rank-one
/// matrices. Computed by power iteration so it stays cheap on large inputs.
pub fn rom(a: &DataMatrix) -> Result<f64> {
    let frob = a.frobenius_sq().sqrt();
    if frob == 0.0 {
        return Err(Error::InvalidParameter(
            "rank-oneness measure is undefined for a zero matrix".into(),
        ));
    }
    let triplet = leading_singular_triplet(a, 1e-12, 10_000, 0);
    Ok(triplet.sigma / frob)
}

/// Sensitivity coefficient of each eigenvector:
/// `s_i = sqrt(Σ_{j≠i} 1 / (λ_i - λ_j)²)`.
///
/// Eigenvalues must be strictly distinct (every gap above
/// [`MIN_EIGEN_GAP`]); near-degenerate spectra make the formula blow up.
pub fn sensitivity_coeffs(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    for i in 0..eigenvalues.len() {
        for j in (i + 1)..eigenvalues.len() {
            let gap = (eigenvalues[i] - eigenvalues[j]).abs();
            if gap <= MIN_EIGEN_GAP {
                return Err(Error::DegenerateSpectrum {
                    gap,
                    min_gap: MIN_EIGEN_GAP,
                });
            }
        }
    }
    Ok((0..eigenvalues.len())
        .map(|i| {
            eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &lj)| {
                    let gap = eigenvalues[i] - lj;
                    1.0 / (gap * gap)
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}

/// Margin of the correlation lower bound on the matrix as given (raw rows):
/// `max_m |vᵀ a_m| - σ₁ / sqrt(M)`, which is nonnegative up to roundoff.
pub fn correlation_bound_margin(a: &DataMatrix) -> Result<f64> {
    let spectrum = full_spectrum(a)?;
    let sigma1 = spectrum.values[0];
    let v = spectrum.right_vectors.column(0);
    let max_corr = a
        .array()
        .rows()
        .into_iter()
        .map(|row| row.dot(&v).abs())
        .fold(0.0f64, f64::max);
    Ok(max_corr - sigma1 / (a.nrows() as f64).sqrt())
}

/// Both sides of the volume-sampling error bound for subset size `k`:
/// the determinant-weighted expected projection error on the left and
/// `(k + 1)` times the best rank-k error on the right.
#[derive(Debug, Clone, Copy)]
pub struct VsBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl VsBoundCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

/// Exhaustively enumerates all K-subsets to evaluate the expected
/// projection error under volume sampling, and compares it against
/// `(K+1) ‖A - A_K‖²_F`. Refuses inputs whose subset count exceeds the
/// volume-sampling enumeration cap.
pub fn check_vs_bound(a: &DataMatrix, k: usize) -> Result<VsBoundCheck> {
    if binomial_exceeds(a.nrows(), k, DEFAULT_ENUMERATION_CAP) {
        return Err(Error::InvalidParameter(format!(
            "C({}, {k}) subsets exceed the enumeration cap {DEFAULT_ENUMERATION_CAP}",
            a.nrows()
        )));
    }
    let weighted = enumerate_weighted_subsets(a, k)?;
    let total: f64 = weighted.iter().map(|(_, w)| w).sum();
    if total <= 0.0 {
        return Err(Error::ZeroVolume { k });
    }
    let mut lhs = 0.0;
    for (subset, w) in &weighted {
        if *w == 0.0 {
            continue;
        }
        lhs += (w / total) * projection_error(a, subset)?;
    }
    let rhs = (k as f64 + 1.0) * best_rank_k_error(a, k)?;
    Ok(VsBoundCheck { lhs, rhs })
}

/// Measured eigenvector motion against the first-order sensitivity bound.
#[derive(Debug, Clone, Copy)]
pub struct PerturbationCheck {
    /// ‖v_i(C + δ) - v_i(C)‖₂ after sign alignment.
    pub lhs: f64,
    /// s_i ‖δ‖_F.
    pub bound: f64,
}

impl PerturbationCheck {
    /// First-order bound with multiplicative slack for second-order terms.
    pub fn holds(&self, slack_factor: f64) -> bool {
        self.lhs <= self.bound * slack_factor
    }

    /// Fraction of the bound used; 0/0 counts as 0.
    pub fn ratio(&self) -> f64 {
        if self.lhs == 0.0 {
            0.0
        } else {
            self.lhs / self.bound
        }
    }
}

/// Compares the motion of the `i`-th eigenvector of symmetric `c` under a
/// symmetric perturbation `delta` against `s_i ‖delta‖_F`.
///
/// The perturbation must be small next to the smallest eigengap (at most
/// 1e-3 of it) so eigenvalue ordering cannot change.
pub fn check_eigvec_perturbation(
    c: &Array2<f64>,
    delta: &Array2<f64>,
    i: usize,
) -> Result<PerturbationCheck> {
    if c.nrows() != c.ncols() || delta.nrows() != delta.ncols() || c.nrows() != delta.nrows() {
        return Err(Error::InvalidParameter(
            "c and delta must be square with matching size".into(),
        ));
    }
    for r in 0..c.nrows() {
        for s in (r + 1)..c.ncols() {
            if (c[[r, s]] - c[[s, r]]).abs() > 1e-12
                || (delta[[r, s]] - delta[[s, r]]).abs() > 1e-12
            {
                return Err(Error::InvalidParameter(
                    "c and delta must be symmetric".into(),
                ));
            }
        }
    }
    let (lambdas, vectors) = jacobi_eigh(c);
    if i >= lambdas.len() {
        return Err(Error::InvalidParameter(format!(
            "eigenvector index {i} out of range"
        )));
    }
    let sens = sensitivity_coeffs(&lambdas)?;
    let min_gap = lambdas
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min);
    let delta_frob: f64 = delta.iter().map(|x| x * x).sum::<f64>().sqrt();
    if delta_frob > 1e-3 * min_gap {
        return Err(Error::InvalidParameter(format!(
            "perturbation norm {delta_frob} exceeds 1e-3 of the minimum eigengap {min_gap}"
        )));
    }

    let perturbed = c + delta;
    let (_, vectors2) = jacobi_eigh(&perturbed);
    let v1 = vectors.column(i);
    let mut v2 = vectors2.column(i).to_owned();
    if v1.dot(&v2) < 0.0 {
        v2.mapv_inplace(|x| -x);
    }
    let diff = &v2 - &v1;
    Ok(PerturbationCheck {
        lhs: diff.dot(&diff).sqrt(),
        bound: sens[i] * delta_frob,
    })
}
