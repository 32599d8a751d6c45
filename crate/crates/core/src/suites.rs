//! Checked-in benchmark and property-sweep suites: the error-ratio and
//! runtime comparisons, the lemma/bound sweeps, and the outlier-robustness
//! study. Each suite reports every check with its measurement and threshold.

use std::fmt;
use std::time::Instant;

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::baselines::{det_greedy_select, kmedoids_select, qrcp_select, random_select};
use crate::datagen::{self, generate, SynthKind, SynthSpec};
use crate::error::{Error, Result};
use crate::linalg::full_spectrum;
use crate::matrix::DataMatrix;
use crate::metrics::{
    check_eigvec_perturbation, check_vs_bound, correlation_bound_margin, projection_error,
    sensitivity_coeffs,
};
use crate::selection::{ipm_select, IpmOptions, StoppingRule};

/// One measured check with the threshold it was held against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub name: String,
    pub measured: f64,
    pub threshold: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvironmentStamp {
    pub threads: usize,
    pub build: String,
}

impl EnvironmentStamp {
    fn current() -> Self {
        Self {
            threads: 1, // all kernels are single-threaded by construction
            build: format!(
                "subsel {} ({})",
                env!("CARGO_PKG_VERSION"),
                if cfg!(debug_assertions) {
                    "debug"
                } else {
                    "release"
                }
            ),
        }
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<SuiteCheck>,
    pub environment: EnvironmentStamp,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(
            f,
            "environment: {} threads, {}",
            self.environment.threads, self.environment.build
        )?;
        let name_width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        writeln!(
            f,
            "{:<name_width$}  {:>14}  {:<22}  result",
            "check", "measured", "threshold"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<name_width$}  {:>14.6e}  {:<22}  {}",
                c.name,
                c.measured,
                c.threshold,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Runs a suite by name: `error-ratio`, `runtime`, `lemma`, or `outlier`.
pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "error-ratio" => Ok(error_ratio_report(&ErrorRatioConfig::default())),
        "runtime" => Ok(runtime_report(&RuntimeConfig::default())),
        "lemma" => lemma_report(&LemmaConfig::default()),
        "outlier" => Ok(outlier_report(&OutlierConfig::default())),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// All suite names accepted by [`run_suite`].
pub const SUITE_NAMES: &[&str] = &["error-ratio", "runtime", "lemma", "outlier"];

fn check(
    name: impl Into<String>,
    measured: f64,
    threshold: impl Into<String>,
    passed: bool,
) -> SuiteCheck {
    SuiteCheck {
        name: name.into(),
        measured,
        threshold: threshold.into(),
        passed,
    }
}

fn random_gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DataMatrix {
    DataMatrix::from_validated(Array2::from_shape_fn((rows, cols), |_| {
        rng.sample(StandardNormal)
    }))
}

// ---------------------------------------------------------------------------
// Lemma / bound sweeps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct LemmaConfig {
    /// Random matrices for the direct margin sweeps.
    pub matrices: usize,
    /// Seeded IPM runs whose whole trajectory is checked.
    pub trajectory_runs: usize,
    /// Matrices for the volume-sampling bound enumeration.
    pub volume_bound_matrices: usize,
    /// (C, delta) pairs for the perturbation bound.
    pub perturbation_pairs: usize,
    /// Generated eigenvalue sequences for the sensitivity ordering check.
    pub ordering_spectra: usize,
    pub seed: u64,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        Self {
            matrices: 1000,
            trajectory_runs: 100,
            volume_bound_matrices: 200,
            perturbation_pairs: 200,
            ordering_spectra: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MarginStats {
    /// Smallest observed margin; the bounds hold when this is ≥ -1e-9.
    pub min_margin: f64,
    pub cases: usize,
}

/// Correlation lower bound on raw rows over seeded random matrices with
/// M, N ≤ 40: `max_m |vᵀ a_m| ≥ σ₁/√M`.
pub fn correlation_bound_sweep(matrices: usize, seed: u64) -> Result<MarginStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x11));
    let mut min_margin = f64::INFINITY;
    for _ in 0..matrices {
        let m = rng.random_range(2..=40);
        let n = rng.random_range(2..=40);
        let a = random_gaussian(&mut rng, m, n);
        min_margin = min_margin.min(correlation_bound_margin(&a)?);
    }
    Ok(MarginStats {
        min_margin,
        cases: matrices,
    })
}

/// Same bound on row-normalized matrices, phrased against the rank-oneness
/// measure: `max correlation ≥ ROM(Ã)`.
pub fn rom_bound_sweep(matrices: usize, seed: u64) -> Result<MarginStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x22));
    let mut min_margin = f64::INFINITY;
    for _ in 0..matrices {
        let m = rng.random_range(2..=40);
        let n = rng.random_range(2..=40);
        let a = random_gaussian(&mut rng, m, n);
        let (normalized, _, _) = crate::linalg::normalize_rows(&a, 1e-12);
        min_margin = min_margin.min(rom_margin(&normalized)?);
    }
    Ok(MarginStats {
        min_margin,
        cases: matrices,
    })
}

fn rom_margin(normalized: &DataMatrix) -> Result<f64> {
    let s = full_spectrum(normalized)?;
    let v = s.right_vectors.column(0);
    let max_corr = normalized
        .array()
        .rows()
        .into_iter()
        .map(|row| row.dot(&v).abs())
        .fold(0.0f64, f64::max);
    let rom = s.values[0] / normalized.frobenius_sq().sqrt();
    Ok(max_corr - rom)
}

#[derive(Debug, Clone, Copy)]
pub struct TrajectoryStats {
    /// Smallest raw-row margin over every iteration of every run.
    pub raw_margin_min: f64,
    /// Smallest normalized-row (ROM) margin over the same states.
    pub rom_margin_min: f64,
    pub iterations: usize,
}

/// Replays seeded IPM runs and checks both correlation bounds on the
/// residual matrix at every iteration, before each pick.
pub fn trajectory_sweep(runs: usize, seed: u64) -> Result<TrajectoryStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x33));
    let opts = IpmOptions::default();
    let mut raw_margin_min = f64::INFINITY;
    let mut rom_margin_min = f64::INFINITY;
    let mut iterations = 0;
    for _ in 0..runs {
        let m = rng.random_range(4..=40);
        let n = rng.random_range(3..=40);
        let a = random_gaussian(&mut rng, m, n);
        let k = 10.min(m).min(n);
        let result = ipm_select(&a, &StoppingRule::max_selected(k), &opts);

        let orig_norms = a.row_norms();
        let mut residual = a.clone();
        for &pick in &result.indices {
            raw_margin_min = raw_margin_min.min(correlation_bound_margin(&residual)?);

            let live_rows: Vec<Vec<f64>> = residual
                .array()
                .rows()
                .into_iter()
                .enumerate()
                .filter(|(i, row)| {
                    let norm = row.dot(row).sqrt();
                    orig_norms[*i] > 0.0 && norm > opts.spanned_eps * orig_norms[*i]
                })
                .map(|(_, row)| {
                    let norm = row.dot(&row).sqrt();
                    row.iter().map(|x| x / norm).collect()
                })
                .collect();
            if !live_rows.is_empty() {
                let b = DataMatrix::from_rows(&live_rows)?;
                rom_margin_min = rom_margin_min.min(rom_margin(&b)?);
            }
            iterations += 1;

            let row = residual.row(pick).to_owned();
            let norm = row.dot(&row).sqrt();
            if norm == 0.0 {
                break;
            }
            residual = crate::linalg::deflate_rows(&residual, (row / norm).view())?;
        }
    }
    Ok(TrajectoryStats {
        raw_margin_min,
        rom_margin_min,
        iterations,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct VolumeBoundStats {
    /// Largest observed `lhs - rhs`; the bound holds when ≤ 1e-9.
    pub max_excess: f64,
    pub cases: usize,
}

/// Exhaustive volume-sampling bound check on small matrices (M ≤ 8) for
/// every K ≤ 3.
pub fn volume_bound_sweep(matrices: usize, seed: u64) -> Result<VolumeBoundStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x44));
    let mut max_excess = f64::NEG_INFINITY;
    let mut cases = 0;
    for _ in 0..matrices {
        let m = rng.random_range(4..=8);
        let n = rng.random_range(4..=6);
        let a = random_gaussian(&mut rng, m, n);
        for k in 1..=3usize.min(m) {
            let bound = check_vs_bound(&a, k)?;
            max_excess = max_excess.max(bound.lhs - bound.rhs);
            cases += 1;
        }
    }
    Ok(VolumeBoundStats { max_excess, cases })
}

#[derive(Debug, Clone, Copy)]
pub struct PerturbationSweepStats {
    /// Largest lhs/bound at the coarse step size; must stay ≤ 1.05.
    pub max_ratio_coarse: f64,
    /// Mean lhs/bound at eps = 1e-6.
    pub mean_ratio_coarse: f64,
    /// Mean lhs/bound at eps = 1e-7; first-order convergence keeps this from
    /// exceeding the coarse mean.
    pub mean_ratio_fine: f64,
    pub pairs: usize,
}

/// Finite-perturbation sweep of the eigenvector sensitivity bound at two
/// step sizes. Matrices are rejected (deterministically) until the minimum
/// eigengap supports the perturbation precondition.
pub fn perturbation_bound_sweep(pairs: usize, seed: u64) -> Result<PerturbationSweepStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x55));
    let mut max_ratio_coarse = 0.0f64;
    let mut sum_coarse = 0.0;
    let mut sum_fine = 0.0;
    let mut done = 0;
    while done < pairs {
        let n = rng.random_range(3..=8);
        let b = Array2::from_shape_fn((n, n), |_| rng.sample::<f64, _>(StandardNormal));
        let c = b.dot(&b.t());
        let (lambdas, _) = crate::linalg::jacobi_eigh(&c);
        let min_gap = lambdas
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-2 {
            continue;
        }
        let mut d = Array2::from_shape_fn((n, n), |_| rng.sample::<f64, _>(StandardNormal));
        d = (&d + &d.t()) * 0.5;
        let frob: f64 = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        d.mapv_inplace(|x| x / frob);
        let i = rng.random_range(0..n);

        let coarse = check_eigvec_perturbation(&c, &(&d * 1e-6), i)?;
        let fine = check_eigvec_perturbation(&c, &(&d * 1e-7), i)?;
        max_ratio_coarse = max_ratio_coarse.max(coarse.ratio());
        sum_coarse += coarse.ratio();
        sum_fine += fine.ratio();
        done += 1;
    }
    Ok(PerturbationSweepStats {
        max_ratio_coarse,
        mean_ratio_coarse: sum_coarse / pairs as f64,
        mean_ratio_fine: sum_fine / pairs as f64,
        pairs,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct SensitivityOrderingStats {
    pub violations: usize,
    pub spectra: usize,
}

/// Sensitivity ordering `s₁ < s_i` on spectra with strictly decreasing
/// consecutive gaps.
pub fn sensitivity_ordering_sweep(spectra: usize, seed: u64) -> Result<SensitivityOrderingStats> {
    let mut violations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(datagen::mix_seed(seed, 0x66));
    for _ in 0..spectra {
        let count = rng.random_range(3..=10);
        let vals = datagen::decreasing_gap_eigenvalues(count, rng.random());
        let s = sensitivity_coeffs(&vals)?;
        if s.iter().skip(1).any(|&si| s[0] >= si) {
            violations += 1;
        }
    }
    Ok(SensitivityOrderingStats {
        violations,
        spectra,
    })
}

fn lemma_report(cfg: &LemmaConfig) -> Result<SuiteReport> {
    let l1 = correlation_bound_sweep(cfg.matrices, cfg.seed)?;
    let p1 = rom_bound_sweep(cfg.matrices, cfg.seed)?;
    let traj = trajectory_sweep(cfg.trajectory_runs, cfg.seed)?;
    let vb = volume_bound_sweep(cfg.volume_bound_matrices, cfg.seed)?;
    let l2 = perturbation_bound_sweep(cfg.perturbation_pairs, cfg.seed)?;
    let p2 = sensitivity_ordering_sweep(cfg.ordering_spectra, cfg.seed)?;
    let convergence = l2.mean_ratio_fine / l2.mean_ratio_coarse;
    let checks = vec![
        check(
            "raw-correlation-min-margin",
            l1.min_margin,
            ">= -1e-9",
            l1.min_margin >= -1e-9,
        ),
        check(
            "raw-correlation-trajectory-min-margin",
            traj.raw_margin_min,
            ">= -1e-9",
            traj.raw_margin_min >= -1e-9,
        ),
        check(
            "rom-min-margin",
            p1.min_margin,
            ">= -1e-9",
            p1.min_margin >= -1e-9,
        ),
        check(
            "rom-trajectory-min-margin",
            traj.rom_margin_min,
            ">= -1e-9",
            traj.rom_margin_min >= -1e-9,
        ),
        check(
            "volume-bound-max-excess",
            vb.max_excess,
            "<= 1e-9",
            vb.max_excess <= 1e-9,
        ),
        check(
            "perturbation-max-bound-ratio",
            l2.max_ratio_coarse,
            "<= 1.05",
            l2.max_ratio_coarse <= 1.05,
        ),
        check(
            "perturbation-ratio-convergence",
            convergence,
            "<= 1.001",
            convergence <= 1.001,
        ),
        check(
            "sensitivity-ordering-violations",
            p2.violations as f64,
            "== 0",
            p2.violations == 0,
        ),
    ];
    Ok(SuiteReport {
        suite: "lemma".into(),
        checks,
        environment: EnvironmentStamp::current(),
    })
}

// ---------------------------------------------------------------------------
// Error-ratio suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ErrorRatioConfig {
    pub trials: usize,
    pub rows: usize,
    pub cols: usize,
    pub subspaces: usize,
    pub dim: usize,
    pub noise_sigma: f64,
    pub k_max: usize,
    pub seed: u64,
}

impl Default for ErrorRatioConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            rows: 200,
            cols: 50,
            subspaces: 5,
            dim: 5,
            noise_sigma: 0.05,
            k_max: 10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ErrorRatioRow {
    pub k: usize,
    /// Mean over trials of projection_error(method) / projection_error(random).
    pub ipm: f64,
    pub kmedoids: f64,
    pub detgreedy: f64,
}

#[derive(Debug, Clone)]
pub struct ErrorRatioStats {
    pub per_k: Vec<ErrorRatioRow>,
}

/// Projection-error ratios versus random selection on subspace-union data,
/// for every subset size up to `k_max`.
pub fn error_ratio_sweep(cfg: &ErrorRatioConfig) -> Result<ErrorRatioStats> {
    let opts = IpmOptions::default();
    let mut sums = vec![[0.0f64; 3]; cfg.k_max];
    for trial in 0..cfg.trials {
        let spec = SynthSpec {
            kind: SynthKind::SubspaceUnion {
                subspaces: cfg.subspaces,
                dim: cfg.dim,
            },
            rows: cfg.rows,
            cols: cfg.cols,
            noise_sigma: cfg.noise_sigma,
            outlier_count: 0,
            outlier_scale: 1.0,
            seed: datagen::mix_seed(cfg.seed, 0x1000 + trial as u64),
        };
        let (a, _) = generate(&spec)?;
        let ipm = ipm_select(&a, &StoppingRule::max_selected(cfg.k_max), &opts);
        let dg = det_greedy_select(&a, cfg.k_max)?;
        for k in 1..=cfg.k_max {
            let rand_seed = datagen::mix_seed(cfg.seed, 0x2000 + (trial * cfg.k_max + k) as u64);
            let rand = random_select(&a, k, rand_seed)?;
            let rand_err = projection_error(&a, &rand.indices)?;
            let km = kmedoids_select(&a, k, 0, 100)?;
            let ipm_err = projection_error(&a, &ipm.indices[..k])?;
            let km_err = projection_error(&a, &km.indices)?;
            let dg_err = projection_error(&a, &dg.indices[..k])?;
            sums[k - 1][0] += ipm_err / rand_err;
            sums[k - 1][1] += km_err / rand_err;
            sums[k - 1][2] += dg_err / rand_err;
        }
    }
    let per_k = (1..=cfg.k_max)
        .map(|k| ErrorRatioRow {
            k,
            ipm: sums[k - 1][0] / cfg.trials as f64,
            kmedoids: sums[k - 1][1] / cfg.trials as f64,
            detgreedy: sums[k - 1][2] / cfg.trials as f64,
        })
        .collect();
    Ok(ErrorRatioStats { per_k })
}

fn error_ratio_report(cfg: &ErrorRatioConfig) -> SuiteReport {
    let mut checks = Vec::new();
    match error_ratio_sweep(cfg) {
        Ok(stats) => {
            for row in &stats.per_k {
                checks.push(check(
                    format!("ipm-vs-random-ratio-k{}", row.k),
                    row.ipm,
                    "< 1.0",
                    row.ipm < 1.0,
                ));
            }
            for row in stats.per_k.iter().filter(|r| r.k >= 5) {
                checks.push(check(
                    format!("ipm-minus-kmedoids-ratio-k{}", row.k),
                    row.ipm - row.kmedoids,
                    "<= 0",
                    row.ipm <= row.kmedoids,
                ));
            }
        }
        Err(e) => checks.push(check(format!("sweep-failed: {e}"), f64::NAN, "n/a", false)),
    }
    SuiteReport {
        suite: "error-ratio".into(),
        checks,
        environment: EnvironmentStamp::current(),
    }
}

// ---------------------------------------------------------------------------
// Runtime suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RuntimeConfig {
    pub sizes: Vec<usize>,
    pub cols: usize,
    pub k: usize,
    /// Size at which IPM is raced against PAM k-medoids.
    pub pam_at: usize,
    pub seed: u64,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        Self {
            sizes: vec![500, 1000, 2000, 4000, 8000],
            cols: 64,
            k: 10,
            pam_at: 4000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RuntimeStats {
    /// (rows, seconds) per measured size.
    pub points: Vec<(usize, f64)>,
    /// Least-squares slope of log(time) against log(rows).
    pub slope: f64,
    pub ipm_seconds_at_race: f64,
    pub pam_seconds_at_race: f64,
}

/// Wall-clock scaling of IPM over matrix sizes with a fixed spectrum
/// profile, plus a head-to-head against PAM k-medoids at one size. One
/// warm-up run per size is discarded before timing.
pub fn runtime_sweep(cfg: &RuntimeConfig) -> Result<RuntimeStats> {
    let opts = IpmOptions::default();
    // Geometric singular-value profile keeps power-iteration counts flat
    // across sizes, so the timing isolates the per-iteration O(MN) cost.
    let sigmas: Vec<f64> = (0..cfg.cols.min(64))
        .map(|i| 0.9f64.powi(i as i32))
        .collect();
    let mut points = Vec::new();
    let mut ipm_race = f64::NAN;
    let mut pam_race = f64::NAN;
    for &m in &cfg.sizes {
        let spec = SynthSpec {
            kind: SynthKind::ControlledSpectrum {
                singular_values: sigmas.clone(),
            },
            rows: m,
            cols: cfg.cols,
            noise_sigma: 0.0,
            outlier_count: 0,
            outlier_scale: 1.0,
            seed: datagen::mix_seed(cfg.seed, m as u64),
        };
        let (a, _) = generate(&spec)?;
        let stop = StoppingRule::max_selected(cfg.k);
        ipm_select(&a, &stop, &opts); // warm-up, discarded
        let secs = (0..2)
            .map(|_| {
                let start = Instant::now();
                ipm_select(&a, &stop, &opts);
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        points.push((m, secs));
        if m == cfg.pam_at {
            ipm_race = secs;
            kmedoids_select(&a, cfg.k, 0, 100)?; // warm-up, discarded
            let start = Instant::now();
            kmedoids_select(&a, cfg.k, 0, 100)?;
            pam_race = start.elapsed().as_secs_f64();
        }
    }
    let slope = log_log_slope(&points);
    Ok(RuntimeStats {
        points,
        slope,
        ipm_seconds_at_race: ipm_race,
        pam_seconds_at_race: pam_race,
    })
}

fn log_log_slope(points: &[(usize, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|(m, _)| (*m as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.max(1e-9).ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    cov / var
}

fn runtime_report(cfg: &RuntimeConfig) -> SuiteReport {
    let mut checks = Vec::new();
    match runtime_sweep(cfg) {
        Ok(stats) => {
            checks.push(check(
                "ipm-loglog-slope",
                stats.slope,
                "in [0.8, 1.3]",
                (0.8..=1.3).contains(&stats.slope),
            ));
            let ratio = stats.ipm_seconds_at_race / stats.pam_seconds_at_race;
            checks.push(check(
                format!("ipm-over-kmedoids-time-at-{}", cfg.pam_at),
                ratio,
                "< 1.0",
                ratio < 1.0,
            ));
            for (m, secs) in &stats.points {
                checks.push(check(
                    format!("ipm-seconds-m{m}"),
                    *secs,
                    "n/a (reported)",
                    true,
                ));
            }
        }
        Err(e) => checks.push(check(format!("sweep-failed: {e}"), f64::NAN, "n/a", false)),
    }
    SuiteReport {
        suite: "runtime".into(),
        checks,
        environment: EnvironmentStamp::current(),
    }
}

// ---------------------------------------------------------------------------
// Outlier suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct OutlierConfig {
    pub trials: usize,
    pub rows: usize,
    pub cols: usize,
    pub clusters: usize,
    pub spread: f64,
    pub outlier_count: usize,
    pub outlier_scale: f64,
    pub k: usize,
    pub seed: u64,
}

impl Default for OutlierConfig {
    fn default() -> Self {
        Self {
            trials: 20,
            rows: 200,
            cols: 30,
            clusters: 5,
            spread: 0.3,
            outlier_count: 10, // 5% of rows
            outlier_scale: 5.0,
            k: 10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OutlierStats {
    /// Mean count of outlier rows selected, per method.
    pub per_method: Vec<(String, f64)>,
    /// Expected count under uniform random selection.
    pub random_chance: f64,
}

/// Counts how many injected outliers each method selects on clustered data
/// with 5% outliers at 5x the typical row norm.
pub fn outlier_sweep(cfg: &OutlierConfig) -> Result<OutlierStats> {
    let opts = IpmOptions::default();
    let methods = ["ipm", "kmedoids", "detgreedy", "qrcp", "random"];
    let mut totals = vec![0.0f64; methods.len()];
    for trial in 0..cfg.trials {
        let spec = SynthSpec {
            kind: SynthKind::GaussianClusters {
                clusters: cfg.clusters,
                spread: cfg.spread,
            },
            rows: cfg.rows,
            cols: cfg.cols,
            noise_sigma: 0.0,
            outlier_count: cfg.outlier_count,
            outlier_scale: cfg.outlier_scale,
            seed: datagen::mix_seed(cfg.seed, 0x3000 + trial as u64),
        };
        let (a, labels) = generate(&spec)?;
        let count_outliers = |indices: &[usize]| {
            indices
                .iter()
                .filter(|&&i| labels[i] == datagen::OUTLIER_LABEL)
                .count() as f64
        };
        let ipm = ipm_select(&a, &StoppingRule::max_selected(cfg.k), &opts);
        totals[0] += count_outliers(&ipm.indices);
        totals[1] += count_outliers(&kmedoids_select(&a, cfg.k, 0, 100)?.indices);
        totals[2] += count_outliers(&det_greedy_select(&a, cfg.k)?.indices);
        totals[3] += count_outliers(&qrcp_select(&a, cfg.k)?.indices);
        let seed = datagen::mix_seed(cfg.seed, 0x4000 + trial as u64);
        totals[4] += count_outliers(&random_select(&a, cfg.k, seed)?.indices);
    }
    let per_method = methods
        .iter()
        .zip(totals)
        .map(|(name, total)| (name.to_string(), total / cfg.trials as f64))
        .collect();
    Ok(OutlierStats {
        per_method,
        random_chance: cfg.k as f64 * cfg.outlier_count as f64 / cfg.rows as f64,
    })
}

fn outlier_report(cfg: &OutlierConfig) -> SuiteReport {
    let mut checks = Vec::new();
    match outlier_sweep(cfg) {
        Ok(stats) => {
            let get = |name: &str| {
                stats
                    .per_method
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| *v)
                    .unwrap_or(f64::NAN)
            };
            // Diversity-driven selection chases the big outlier rows far
            // beyond chance level.
            let threshold = 2.0 * stats.random_chance;
            for name in ["detgreedy", "qrcp"] {
                checks.push(check(
                    format!("{name}-mean-outliers-selected"),
                    get(name),
                    format!(">= {threshold} (2x chance)"),
                    get(name) >= threshold,
                ));
            }
            for name in ["ipm", "kmedoids", "random"] {
                checks.push(check(
                    format!("{name}-mean-outliers-selected"),
                    get(name),
                    "n/a (reported)",
                    true,
                ));
            }
        }
        Err(e) => checks.push(check(format!("sweep-failed: {e}"), f64::NAN, "n/a", false)),
    }
    SuiteReport {
        suite: "outlier".into(),
        checks,
        environment: EnvironmentStamp::current(),
    }
}
