//! Shared data setup for the criterion benchmarks.

use subsel::datagen::{generate, SynthKind, SynthSpec};
use subsel::DataMatrix;

/// Subspace-union benchmark matrix with light noise, seeded.
pub fn bench_matrix(rows: usize, cols: usize, seed: u64) -> DataMatrix {
    let spec = SynthSpec {
        kind: SynthKind::SubspaceUnion {
            subspaces: 5,
            dim: 5,
        },
        rows,
        cols,
        noise_sigma: 0.05,
        outlier_count: 0,
        outlier_scale: 1.0,
        seed,
    };
    generate(&spec).expect("benchmark spec is valid").0
}
