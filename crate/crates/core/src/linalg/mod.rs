//! Dense linear-algebra kernels: row normalization, deflation, projection,
//! power iteration for the leading singular triplet, and a Jacobi
//! eigensolver for full spectra of small matrices.

mod basis;
mod jacobi;
mod power;

pub use basis::OrthonormalBasis;
pub use jacobi::{full_spectrum, full_spectrum_capped, Spectrum, DEFAULT_SPECTRUM_CAP};
pub use power::{leading_singular_triplet, SingularTriplet};

pub(crate) use jacobi::jacobi_eigh;
pub(crate) use power::power_iterate;

use ndarray::{Array2, ArrayView1};

use crate::error::{Error, Result};
use crate::matrix::DataMatrix;

/// Scales every row to unit Euclidean norm.
///
/// Rows whose norm is at most `eps` are zeroed and flagged dead instead of
/// being divided by a vanishing quantity. Returns the normalized matrix,
/// the original row norms, and the liveness flags.
pub fn normalize_rows(a: &DataMatrix, eps: f64) -> (DataMatrix, Vec<f64>, Vec<bool>) {
    assert!(eps > 0.0, "eps must be positive");
    let norms = a.row_norms();
    let mut out = a.array().clone();
    let mut live = vec![true; a.nrows()];
    for (m, mut row) in out.rows_mut().into_iter().enumerate() {
        if norms[m] > eps {
            row.mapv_inplace(|x| x / norms[m]);
        } else {
            row.fill(0.0);
            live[m] = false;
        }
    }
    (DataMatrix::from_validated(out), norms, live)
}

/// Projects every row onto the orthogonal complement of the unit vector `d`,
/// i.e. computes `A (I - d dᵀ)`.
pub fn deflate_rows(a: &DataMatrix, d: ArrayView1<'_, f64>) -> Result<DataMatrix> {
    let norm = d.dot(&d).sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitVector { norm });
    }
    if d.len() != a.ncols() {
        return Err(Error::InvalidParameter(format!(
            "direction length {} does not match column count {}",
            d.len(),
            a.ncols()
        )));
    }
    let mut out = a.array().clone();
    deflate_in_place(&mut out, d);
    Ok(DataMatrix::from_validated(out))
}

/// Row-wise rank-one deflation without revalidation; `d` must be unit.
pub(crate) fn deflate_in_place(a: &mut Array2<f64>, d: ArrayView1<'_, f64>) {
    let coeffs = a.dot(&d);
    for (mut row, &c) in a.rows_mut().into_iter().zip(coeffs.iter()) {
        row.scaled_add(-c, &d);
    }
}

/// Removes the span of `q` from every row of `a` and reports the leftover
/// energy: returns `R = A (I - Q Qᵀ)` and `‖R‖²_F`.
///
/// The projection is applied as one block product, independent of the
/// one-direction-at-a-time deflation path.
pub fn project_residual(a: &DataMatrix, q: &OrthonormalBasis) -> (DataMatrix, f64) {
    if q.is_empty() {
        return (a.clone(), a.frobenius_sq());
    }
    assert_eq!(
        q.ambient_dim(),
        a.ncols(),
        "basis lives in a different ambient dimension than the matrix rows"
    );
    let qm = q.as_matrix(); // N x k
    let coeffs = a.array().dot(&qm); // M x k
    let residual = a.array() - &coeffs.dot(&qm.t());
    let energy = residual.iter().map(|x| x * x).sum();
    (DataMatrix::from_validated(residual), energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array1};

    fn mat(rows: &[&[f64]]) -> DataMatrix {
        DataMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn normalize_identity_is_identity() {
        let a = mat(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let (n, norms, live) = normalize_rows(&a, 1e-12);
        assert_eq!(n.array(), a.array());
        assert_eq!(norms, vec![1.0, 1.0]);
        assert_eq!(live, vec![true, true]);
    }

    #[test]
    fn normalize_three_four_five() {
        let a = mat(&[&[3.0, 4.0]]);
        let (n, norms, live) = normalize_rows(&a, 1e-12);
        assert_eq!(n.array(), &array![[0.6, 0.8]]);
        assert_eq!(norms, vec![5.0]);
        assert!(live[0]);
    }

    #[test]
    fn normalize_flags_zero_row() {
        let a = mat(&[&[0.0, 0.0], &[1.0, 1.0]]);
        let (n, norms, live) = normalize_rows(&a, 1e-12);
        assert_eq!(n.row(0).to_vec(), vec![0.0, 0.0]);
        assert_eq!(norms[0], 0.0);
        assert_eq!(live, vec![false, true]);
    }

    #[test]
    fn deflate_by_axis_zeroes_column() {
        let a = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let d = Array1::from(vec![1.0, 0.0]);
        let r = deflate_rows(&a, d.view()).unwrap();
        assert_eq!(r.array(), &array![[0.0, 2.0], [0.0, 4.0]]);
    }

    #[test]
    fn deflate_rejects_non_unit() {
        let a = mat(&[&[1.0, 2.0]]);
        let d = Array1::from(vec![1.0, 1.0]);
        assert!(matches!(
            deflate_rows(&a, d.view()).unwrap_err(),
            Error::NotUnitVector { .. }
        ));
    }

    #[test]
    fn deflate_is_idempotent() {
        let a = mat(&[&[1.0, 2.0, 3.0], &[-1.0, 0.5, 2.0]]);
        let d = Array1::from(vec![1.0 / 3.0_f64.sqrt(); 3]);
        let once = deflate_rows(&a, d.view()).unwrap();
        let twice = deflate_rows(&once, d.view()).unwrap();
        for (x, y) in once.array().iter().zip(twice.array().iter()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn project_residual_empty_basis() {
        let a = mat(&[&[1.0, 0.0], &[1.0, 1.0]]);
        let q = OrthonormalBasis::new(2);
        let (r, energy) = project_residual(&a, &q);
        assert_eq!(r.array(), a.array());
        assert_eq!(energy, 3.0);
    }

    #[test]
    fn project_residual_hand_example() {
        let a = mat(&[&[1.0, 0.0], &[1.0, 1.0]]);
        let mut q = OrthonormalBasis::new(2);
        assert!(q.extend(Array1::from(vec![1.0, 0.0]).view(), 1e-10));
        let (r, energy) = project_residual(&a, &q);
        assert_eq!(r.array(), &array![[0.0, 0.0], [0.0, 1.0]]);
        assert!((energy - 1.0).abs() < 1e-15);
    }
}
