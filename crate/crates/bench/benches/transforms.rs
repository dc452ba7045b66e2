use std::hint::black_box;

use cdl_bench::{gaussian, norm, profiles, radial};
use cdl_core::grid::{legendre_on, polarity_on, transform_grid};
use cdl_core::profiles::{inf_conv_profile, transform_profile};
use cdl_core::{GridSpec, Side, Transform};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn profile_transforms(c: &mut Criterion) {
    let ps = profiles(64);
    let mut group = c.benchmark_group("profile");
    for (name, kind) in [("legendre", Transform::Legendre), ("polarity", Transform::Polarity(2.0)), ("gauge", Transform::GaugeJ)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                for p in &ps {
                    black_box(transform_profile(black_box(p), kind).unwrap());
                }
            })
        });
    }
    group.bench_function("inf_conv", |b| {
        b.iter(|| {
            for w in ps.windows(2) {
                black_box(inf_conv_profile(&w[0], &w[1]));
            }
        })
    });
    group.finish();
}

fn santalo(c: &mut Criterion) {
    let mut group = c.benchmark_group("santalo_ratio");
    for n in 1..=3 {
        let f = radial(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| f.santalo_ratio(black_box(4.0), Side::Left).unwrap())
        });
    }
    group.finish();
}

fn grid_transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("grid");
    group.sample_size(10);
    for h in [1.0 / 16.0, 1.0 / 64.0] {
        let f = gaussian(1, 8.0, h);
        group.bench_with_input(BenchmarkId::new("legendre_1d", h), &f, |b, f| b.iter(|| transform_grid(f, Transform::Legendre).unwrap()));
    }
    let f = gaussian(2, 6.0, 1.0 / 8.0);
    group.bench_function("legendre_2d", |b| b.iter(|| legendre_on(&f, f.spec()).unwrap()));
    let f = norm(2, 4.0, 1.0 / 8.0);
    let probe = GridSpec::symmetric(2, 2.0, 0.25).unwrap();
    group.bench_function("polarity_2d", |b| b.iter(|| polarity_on(&f, 1.0, &probe).unwrap()));
    group.finish();
}

criterion_group!(benches, profile_transforms, santalo, grid_transforms);
criterion_main!(benches);
