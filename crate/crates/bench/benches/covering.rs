use cdl_bench::{covering_pair, radial};
use cdl_core::covering::{covering_lp, covering_volume_bounds, duality_experiment};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("covering_lp");
    group.sample_size(10);
    // the finest step still solves exactly; below it the greedy path runs
    for h in [1.0 / 8.0, 1.0 / 32.0, 1.0 / 128.0] {
        let (f, g) = covering_pair(h);
        group.bench_with_input(BenchmarkId::from_parameter(h), &(f, g), |b, (f, g)| b.iter(|| covering_lp(f, g).unwrap()));
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let mut group = c.benchmark_group("covering_bounds");
    for n in 1..=3 {
        let f = radial(n);
        group.bench_with_input(BenchmarkId::new("volume", n), &f, |b, f| b.iter(|| covering_volume_bounds(f, f).unwrap()));
        group.bench_with_input(BenchmarkId::new("duality", n), &f, |b, f| {
            b.iter(|| duality_experiment(f, f, (n * n) as f64, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lp, bounds);
criterion_main!(benches);
