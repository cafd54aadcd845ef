use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spwave_bench::graph_tensors;
use spwave_core::graphs::{count_connected, enumerate_graphs};
use spwave_core::partitions::invariant_dimension;
use spwave_core::verify::{
    brute_force_invariant_dim, certify_basis, CertifyOptions, DEFAULT_BUDGET,
};

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("count");
    for (m, n) in [(8, 2), (12, 3)] {
        let id = format!("m{m}n{n}");
        g.bench_with_input(BenchmarkId::new("enumerate", &id), &(m, n), |b, &(m, n)| {
            b.iter(|| enumerate_graphs(black_box(m), n).len())
        });
        g.bench_with_input(BenchmarkId::new("dp", &id), &(m, n), |b, &(m, n)| {
            b.iter(|| invariant_dimension(black_box(m), n).unwrap())
        });
    }
    g.bench_function("connected_m40n4", |b| {
        b.iter(|| count_connected(black_box(40), 4).unwrap())
    });
    g.finish();
}

fn tensors(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(20);
    for (m, n) in [(6, 2), (8, 2), (6, 3)] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}n{n}")),
            &(m, n),
            |b, &(m, n)| b.iter(|| graph_tensors(black_box(m), n)),
        );
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("certify_m6n3", |b| {
        b.iter(|| certify_basis(black_box(6), 3, &CertifyOptions::default()).unwrap())
    });
    g.bench_function("brute_force_m6n2", |b| {
        b.iter(|| brute_force_invariant_dim(black_box(6), 2, DEFAULT_BUDGET).unwrap())
    });
    g.finish();
}

criterion_group!(benches, counting, tensors, verification);
criterion_main!(benches);
