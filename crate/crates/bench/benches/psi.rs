use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use foulkes_bench::SHAPES;
use foulkes_core::foulkes_map::{psi_composed, psi_fused};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi");
    g.sample_size(10);
    for (a, b) in SHAPES {
        let id = format!("{a}x{b}");
        g.bench_with_input(BenchmarkId::new("fused", &id), &(a, b), |bch, &(a, b)| bch.iter(|| psi_fused(a, b).unwrap()));
        g.bench_with_input(BenchmarkId::new("composed", &id), &(a, b), |bch, &(a, b)| {
            bch.iter(|| psi_composed(a, b).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, build);
criterion_main!(benches);
