use ndarray::{Array1, Array2, ArrayView1};

/// Growing orthonormal basis of N-dimensional vectors, built by
/// Gram-Schmidt with one re-orthogonalization pass per insert.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    ambient: usize,
    vectors: Vec<Array1<f64>>,
}

impl OrthonormalBasis {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            vectors: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Array1<f64>] {
        &self.vectors
    }

    /// Orthogonalizes `w` against the current basis (twice, to control
    /// drift) and appends the normalized residual when it carries more than
    /// `eps * ‖w‖` of new direction. Returns whether the vector was accepted.
    pub fn extend(&mut self, w: ArrayView1<'_, f64>, eps: f64) -> bool {
        assert_eq!(w.len(), self.ambient, "vector dimension mismatch");
        let w_norm = w.dot(&w).sqrt();
        if w_norm == 0.0 {
            return false;
        }
        let mut r = w.to_owned();
        for _ in 0..2 {
            for q in &self.vectors {
                let c = r.dot(q);
                r.scaled_add(-c, q);
            }
        }
        let r_norm = r.dot(&r).sqrt();
        if r_norm <= eps * w_norm {
            return false;
        }
        r.mapv_inplace(|x| x / r_norm);
        self.vectors.push(r);
        true
    }

    /// Basis as an N×k matrix with one orthonormal vector per column.
    pub fn as_matrix(&self) -> Array2<f64> {
        let mut q = Array2::zeros((self.ambient, self.vectors.len()));
        for (j, v) in self.vectors.iter().enumerate() {
            q.column_mut(j).assign(v);
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn extends_with_new_direction() {
        let mut q = OrthonormalBasis::new(2);
        assert!(q.extend(array![1.0, 0.0].view(), 1e-10));
        assert!(q.extend(array![0.0, 1.0].view(), 1e-10));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn rejects_spanned_vector() {
        let mut q = OrthonormalBasis::new(2);
        assert!(q.extend(array![1.0, 0.0].view(), 1e-10));
        assert!(!q.extend(array![2.0, 0.0].view(), 1e-10));
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn gram_schmidt_by_hand() {
        let mut q = OrthonormalBasis::new(2);
        assert!(q.extend(array![1.0, 0.0].view(), 1e-10));
        let s = 1.0 / 2.0_f64.sqrt();
        assert!(q.extend(array![s, s].view(), 1e-10));
        let e2 = &q.vectors()[1];
        assert!((e2[0]).abs() < 1e-12);
        assert!((e2[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_orthonormal() {
        let mut q = OrthonormalBasis::new(4);
        let vecs = [
            array![1.0, 2.0, 3.0, 4.0],
            array![4.0, 3.0, 2.0, 1.0],
            array![1.0, -1.0, 1.0, -1.0],
        ];
        for v in &vecs {
            assert!(q.extend(v.view(), 1e-10));
        }
        for i in 0..q.len() {
            for j in 0..q.len() {
                let dot = q.vectors()[i].dot(&q.vectors()[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() <= 1e-10);
            }
        }
    }
}
