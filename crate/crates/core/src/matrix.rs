use ndarray::{Array2, ArrayView1};

use crate::error::{Error, Result};

/// Dense M×N data matrix with rows as samples.
///
/// Every entry is finite; construction rejects NaN and infinities so the
/// numerical kernels never have to re-check.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    data: Array2<f64>,
}

impl DataMatrix {
    /// Validates and wraps a dense array. Fails on empty dimensions or
    /// non-finite entries.
    pub fn new(data: Array2<f64>) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::EmptyMatrix);
        }
        for ((row, col), &x) in data.indexed_iter() {
            if !x.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
        }
        Ok(Self { data })
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(
                "rows must all have the same length".into(),
            ));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let data = Array2::from_shape_vec((rows.len(), n), flat)
            .expect("row-major shape from per-row vectors");
        Self::new(data)
    }

    /// Wraps an array already known to be finite and non-empty.
    pub(crate) fn from_validated(data: Array2<f64>) -> Self {
        debug_assert!(data.nrows() > 0 && data.ncols() > 0);
        debug_assert!(data.iter().all(|x| x.is_finite()));
        Self { data }
    }

    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    pub fn array(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<f64> {
        self.data
    }

    pub fn row(&self, m: usize) -> ArrayView1<'_, f64> {
        self.data.row(m)
    }

    /// Squared Frobenius norm, the total energy of the matrix.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    /// Euclidean norm of each row.
    pub fn row_norms(&self) -> Vec<f64> {
        self.data
            .rows()
            .into_iter()
            .map(|r| r.dot(&r).sqrt())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn rejects_non_finite() {
        let err = DataMatrix::new(array![[1.0, f64::NAN]]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 0, col: 1 }));
        let err = DataMatrix::new(array![[1.0], [f64::INFINITY]]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 1, col: 0 }));
    }

    #[test]
    fn rejects_empty() {
        assert!(matches!(
            DataMatrix::new(Array2::zeros((0, 3))).unwrap_err(),
            Error::EmptyMatrix
        ));
        assert!(matches!(
            DataMatrix::from_rows(&[]).unwrap_err(),
            Error::EmptyMatrix
        ));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let err = DataMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn norms_and_energy() {
        let a = DataMatrix::new(array![[3.0, 4.0], [0.0, 0.0]]).unwrap();
        assert_eq!(a.row_norms(), vec![5.0, 0.0]);
        assert_eq!(a.frobenius_sq(), 25.0);
    }
}
