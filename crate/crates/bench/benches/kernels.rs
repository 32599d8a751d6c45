use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subsel::{full_spectrum, leading_singular_triplet};
use subsel_bench::bench_matrix;

fn singular_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("leading-singular-value");
    for &m in &[128usize, 512] {
        let a = bench_matrix(m, 64, 11);
        group.bench_with_input(BenchmarkId::new("power-iteration", m), &a, |b, a| {
            b.iter(|| leading_singular_triplet(a, 1e-9, 1000, 0))
        });
        group.bench_with_input(BenchmarkId::new("jacobi-full-spectrum", m), &a, |b, a| {
            b.iter(|| full_spectrum(a).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, singular_kernels);
criterion_main!(benches);
