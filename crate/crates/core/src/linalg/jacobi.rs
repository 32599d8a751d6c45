use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;

/// Largest `min(M, N)` accepted by [`full_spectrum`] before the caller is
/// pointed at the power-iteration path.
pub const DEFAULT_SPECTRUM_CAP: usize = 2000;

/// Full singular spectrum of a matrix: all `min(M, N)` singular values in
/// descending order and the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Singular values, descending.
    pub values: Vec<f64>,
    /// Right singular vectors as columns of an N×R matrix, ordered to match
    /// `values`, with the first nonzero coordinate of each made positive.
    pub right_vectors: Array2<f64>,
}

impl Spectrum {
    /// Squared singular values, i.e. the eigenvalues of AᵀA, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.values.iter().map(|s| s * s).collect()
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in descending order and eigenvectors as matching
/// columns, sign-canonicalized. Input symmetry is the caller's contract;
/// only the lower triangle consistency is debug-asserted.
pub(crate) fn jacobi_eigh(c: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = c.nrows();
    assert_eq!(n, c.ncols(), "jacobi_eigh needs a square matrix");
    let mut a = c.clone();
    let mut v: Array2<f64> = Array2::eye(n);

    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if frob > 0.0 {
        let tol = 1e-15 * frob;
        // A 50-sweep cap is far beyond what cyclic Jacobi needs to converge
        // at these sizes; it only guards against stagnation at roundoff.
        for _sweep in 0..50 {
            let mut off = 0.0_f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[[p, q]] * a[[p, q]];
                }
            }
            if off.sqrt() <= tol {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let apq = a[[p, q]];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let app = a[[p, p]];
                    let aqq = a[[q, q]];
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let cos = 1.0 / (1.0 + t * t).sqrt();
                    let sin = t * cos;
                    // Rotate rows/columns p and q of A.
                    for k in 0..n {
                        let akp = a[[k, p]];
                        let akq = a[[k, q]];
                        a[[k, p]] = cos * akp - sin * akq;
                        a[[k, q]] = sin * akp + cos * akq;
                    }
                    for k in 0..n {
                        let apk = a[[p, k]];
                        let aqk = a[[q, k]];
                        a[[p, k]] = cos * apk - sin * aqk;
                        a[[q, k]] = sin * apk + cos * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[[k, p]];
                        let vkq = v[[k, q]];
                        v[[k, p]] = cos * vkp - sin * vkq;
                        v[[k, q]] = sin * vkp + cos * vkq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[j, j]].partial_cmp(&a[[i, i]]).unwrap());

    let mut values = Vec::with_capacity(n);
    let mut vectors = Array2::zeros((n, n));
    for (slot, &i) in order.iter().enumerate() {
        values.push(a[[i, i]]);
        let mut col = v.column(i).to_owned();
        canonicalize_sign(&mut col);
        vectors.column_mut(slot).assign(&col);
    }
    (values, vectors)
}

/// Flips the vector so its first coordinate of nonnegligible magnitude is
/// positive; keeps results reproducible across runs.
pub(crate) fn canonicalize_sign(v: &mut Array1<f64>) {
    for &x in v.iter() {
        if x.abs() > 1e-12 {
            if x < 0.0 {
                v.mapv_inplace(|y| -y);
            }
            return;
        }
    }
}

/// Full singular spectrum via symmetric eigendecomposition of the smaller
/// Gram matrix (AᵀA when N ≤ M, otherwise AAᵀ).
pub fn full_spectrum(a: &DataMatrix) -> Result<Spectrum> {
    full_spectrum_capped(a, DEFAULT_SPECTRUM_CAP)
}

/// [`full_spectrum`] with an explicit small-matrix cap on `min(M, N)`.
pub fn full_spectrum_capped(a: &DataMatrix, cap: usize) -> Result<Spectrum> {
    let (m, n) = (a.nrows(), a.ncols());
    if m.min(n) > cap {
        return Err(Error::SpectrumCap {
            rows: m,
            cols: n,
            cap,
        });
    }
    let arr = a.array();
    if n <= m {
        let gram = arr.t().dot(arr);
        let (lambdas, vectors) = jacobi_eigh(&gram);
        let values = lambdas.iter().map(|&l| l.max(0.0).sqrt()).collect();
        Ok(Spectrum {
            values,
            right_vectors: vectors,
        })
    } else {
        // Work on the M×M Gram and map left vectors to right ones; zero
        // singular directions get an orthonormal completion.
        let gram = arr.dot(&arr.t());
        let (lambdas, u) = jacobi_eigh(&gram);
        let values: Vec<f64> = lambdas.iter().map(|&l| l.max(0.0).sqrt()).collect();
        let scale = values.first().copied().unwrap_or(0.0);
        let mut right = Array2::zeros((n, m));
        let mut basis = crate::linalg::OrthonormalBasis::new(n);
        for (r, &sigma) in values.iter().enumerate() {
            if sigma > scale * 1e-13 && sigma > 0.0 {
                let mut vr = arr.t().dot(&u.column(r)) / sigma;
                canonicalize_sign(&mut vr);
                basis.extend(vr.view(), 1e-8);
                right.column_mut(r).assign(&vr);
            } else {
                let vr = complete_direction(&mut basis, n);
                right.column_mut(r).assign(&vr);
            }
        }
        Ok(Spectrum {
            values,
            right_vectors: right,
        })
    }
}

/// Picks a coordinate direction with the largest component outside the
/// current span and orthonormalizes it in; used to pad null directions.
fn complete_direction(basis: &mut crate::linalg::OrthonormalBasis, n: usize) -> Array1<f64> {
    let mut best: Option<Array1<f64>> = None;
    let mut best_res = -1.0;
    for j in 0..n {
        let mut e = Array1::zeros(n);
        e[j] = 1.0;
        let mut r = e.clone();
        for q in basis.vectors() {
            let c = r.dot(q);
            r.scaled_add(-c, q);
        }
        let res = r.dot(&r).sqrt();
        if res > best_res {
            best_res = res;
            best = Some(e);
        }
    }
    let e = best.expect("ambient dimension is positive");
    let accepted = basis.extend(e.view(), 1e-12);
    debug_assert!(accepted, "null-space completion must always fit");
    let mut v = basis.vectors().last().unwrap().clone();
    canonicalize_sign(&mut v);
    v
}
