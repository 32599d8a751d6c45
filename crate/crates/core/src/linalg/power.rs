use ndarray::{Array1, Array2};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::DataMatrix;

/// Leading singular value of a matrix together with its unit left and right
/// singular vectors.
#[derive(Debug, Clone)]
pub struct SingularTriplet {
    pub sigma: f64,
    /// Unit left singular vector, length M.
    pub left: Array1<f64>,
    /// Unit right singular vector, length N, first nonzero coordinate positive.
    pub right: Array1<f64>,
    /// False when the iteration hit `max_iter` before the right vector
    /// settled; the best iterate is still returned.
    pub converged: bool,
    /// True when the input matrix was numerically zero; `sigma` is 0 and the
    /// vectors are arbitrary valid unit vectors.
    pub is_zero: bool,
}

/// Leading singular triplet by power iteration on the Gram direction
/// (`v ← AᵀA v`, normalized), started from a seeded random vector.
///
/// Converged when the right vector moves by at most `tol` between steps
/// after sign alignment. Cost per step is O(MN).
pub fn leading_singular_triplet(
    a: &DataMatrix,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> SingularTriplet {
    assert!(tol > 0.0, "tol must be positive");
    assert!(max_iter >= 1, "max_iter must be at least 1");
    power_iterate(a.array(), tol, max_iter, seed)
}

pub(crate) fn power_iterate(
    arr: &Array2<f64>,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> SingularTriplet {
    let (m, n) = (arr.nrows(), arr.ncols());
    let frob_sq: f64 = arr.iter().map(|x| x * x).sum();
    if frob_sq == 0.0 {
        return SingularTriplet {
            sigma: 0.0,
            left: unit_axis(m),
            right: unit_axis(n),
            converged: true,
            is_zero: true,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = random_unit(&mut rng, n);
    let mut converged = false;
    for _ in 0..max_iter {
        let av = arr.dot(&v);
        let mut w = arr.t().dot(&av);
        let w_norm = w.dot(&w).sqrt();
        if w_norm == 0.0 {
            // Landed exactly in the null space; restart from a fresh draw.
            v = random_unit(&mut rng, n);
            continue;
        }
        w.mapv_inplace(|x| x / w_norm);
        let sign = if w.dot(&v) < 0.0 { -1.0 } else { 1.0 };
        let diff = w
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - sign * b) * (a - sign * b))
            .sum::<f64>()
            .sqrt();
        v = w;
        if diff <= tol {
            converged = true;
            break;
        }
    }

    let av = arr.dot(&v);
    let sigma = av.dot(&av).sqrt();
    let (mut left, mut right, is_zero) = if sigma > 0.0 {
        (av / sigma, v, false)
    } else {
        (unit_axis(m), unit_axis(n), true)
    };
    // Canonical orientation: first nonzero coordinate of the right vector
    // positive; the left vector flips with it so A v = sigma u still holds.
    if flip_for_canonical_sign(&right) {
        right.mapv_inplace(|x| -x);
        left.mapv_inplace(|x| -x);
    }
    SingularTriplet {
        sigma,
        left,
        right,
        converged,
        is_zero,
    }
}

fn flip_for_canonical_sign(v: &Array1<f64>) -> bool {
    for &x in v.iter() {
        if x.abs() > 1e-12 {
            return x < 0.0;
        }
    }
    false
}

fn unit_axis(len: usize) -> Array1<f64> {
    let mut e = Array1::zeros(len);
    e[0] = 1.0;
    e
}

fn random_unit(rng: &mut ChaCha8Rng, len: usize) -> Array1<f64> {
    loop {
        let v: Array1<f64> = Array1::from_shape_fn(len, |_| rng.sample(StandardNormal));
        let norm = v.dot(&v).sqrt();
        if norm > 0.0 {
            return v / norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::full_spectrum;
    use ndarray::array;

    #[test]
    fn diagonal_matrix() {
        let a = DataMatrix::new(array![[3.0, 0.0], [0.0, 1.0]]).unwrap();
        let t = leading_singular_triplet(&a, 1e-9, 1000, 0);
        assert!(t.converged);
        assert!((t.sigma - 3.0).abs() < 1e-9);
        assert!((t.right[0] - 1.0).abs() < 1e-6);
        assert!(t.right[1].abs() < 1e-6);
    }

    #[test]
    fn rank_one_sigma_is_product_of_norms() {
        // a bᵀ with ‖a‖ = 2, ‖b‖ = 3.
        let a = array![2.0, 0.0, 0.0];
        let b = array![0.0, 3.0, 0.0, 0.0];
        let mut m = Array2::zeros((3, 4));
        for i in 0..3 {
            for j in 0..4 {
                m[[i, j]] = a[i] * b[j];
            }
        }
        let dm = DataMatrix::new(m).unwrap();
        let t = leading_singular_triplet(&dm, 1e-9, 1000, 0);
        assert!((t.sigma - 6.0).abs() < 1e-9);
    }

    #[test]
    fn matches_full_spectrum_oracle() {
        use rand_distr::StandardNormal;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let data = Array2::from_shape_fn((6, 4), |_| rng.sample(StandardNormal));
        let a = DataMatrix::new(data).unwrap();
        let t = leading_singular_triplet(&a, 1e-9, 1000, 0);
        let s = full_spectrum(&a).unwrap();
        assert!((t.sigma - s.values[0]).abs() <= 1e-8 * s.values[0]);
    }

    #[test]
    fn non_convergence_returns_best_iterate_with_flag() {
        // Near-degenerate leading pair converges too slowly for two
        // iterations at a tiny tolerance; the best iterate still comes back.
        let a = DataMatrix::new(array![[1.0, 0.0], [0.0, 0.999999]]).unwrap();
        let t = leading_singular_triplet(&a, 1e-15, 2, 0);
        assert!(!t.converged);
        assert!(!t.is_zero);
        assert!(t.sigma > 0.9 && t.sigma <= 1.0 + 1e-12);
        assert!((t.right.dot(&t.right) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_flagged() {
        let a = DataMatrix::new(Array2::zeros((3, 2))).unwrap();
        let t = leading_singular_triplet(&a, 1e-9, 10, 0);
        assert!(t.is_zero);
        assert_eq!(t.sigma, 0.0);
        assert!((t.left.dot(&t.left) - 1.0).abs() < 1e-12);
        assert!((t.right.dot(&t.right) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn residual_relation_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let data = Array2::from_shape_fn((7, 5), |_| rng.sample(StandardNormal));
        let a = DataMatrix::new(data).unwrap();
        let t = leading_singular_triplet(&a, 1e-12, 5000, 1);
        let av = a.array().dot(&t.right);
        let diff = &av - &(t.sigma * &t.left);
        let err = diff.dot(&diff).sqrt();
        assert!(err <= 1e-9 * a.frobenius_sq().sqrt());
    }
}
