//! Row subset selection for dense data matrices.
//!
//! The centerpiece is iterative projection and matching (IPM): at each
//! round, find the leading right singular direction of the residual matrix,
//! pick the sample most correlated with it, and project everything onto the
//! null space of the pick. The crate also ships the classical baselines the
//! method is usually compared against (random, uniform, k-medoids, volume
//! sampling, determinant-greedy, pivoted QR, cluster-then-pick), spectral
//! diagnostics (rank-oneness measure, eigenvector sensitivity, correlation
//! and volume-sampling bounds), seeded synthetic data generators, file
//! formats, and the benchmark suites built on top of all of it.
//!
//! ```
//! use subsel::{ipm_select, DataMatrix, IpmOptions, StoppingRule};
//!
//! let a = DataMatrix::from_rows(&[
//!     vec![3.0, 0.0],
//!     vec![0.0, 1.0],
//!     vec![2.9, 0.1],
//! ]).unwrap();
//! let result = ipm_select(&a, &StoppingRule::max_selected(2), &IpmOptions::default());
//! assert_eq!(result.indices.len(), 2);
//! ```

pub mod baselines;
pub mod datagen;
mod error;
pub mod io;
pub mod linalg;
mod matrix;
pub mod metrics;
pub mod selection;
pub mod suites;

pub use error::{Error, Result};
pub use linalg::{
    deflate_rows, full_spectrum, leading_singular_triplet, normalize_rows, project_residual,
    OrthonormalBasis, SingularTriplet, Spectrum,
};
pub use matrix::DataMatrix;
pub use selection::{
    ipm_select, ipm_select_compound, CompoundOptions, IpmOptions, SelectionResult, StoppingRule,
};
