use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use trains::relations::{char_function, ProjectivePoint};
use trains::repharness::{fixed_subspace, TensorRep};
use trains::train::{block_product, coset_compose, coset_eq, coset_invariants};
use trains_bench::coset;

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for support in [2, 4, 6] {
        let (g, h) = (coset(1, 1, support), coset(2, 1, support));
        group.bench_with_input(BenchmarkId::new("theta", support), &support, |b, _| {
            b.iter(|| coset_compose(black_box(&g), black_box(&h)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("blocks", support), &support, |b, _| {
            b.iter(|| block_product(black_box(&g), black_box(&h)).unwrap())
        });
    }
    group.finish();
}

fn equality(c: &mut Criterion) {
    let (g, h) = (coset(3, 1, 3), coset(4, 1, 3));
    let prod = coset_compose(&g, &h).unwrap();
    let again = coset_compose(&g, &h).unwrap();
    c.bench_function("coset_eq/same", |b| b.iter(|| coset_eq(black_box(&prod), black_box(&again)).unwrap()));
    c.bench_function("coset_eq/distinct", |b| b.iter(|| coset_eq(black_box(&g), black_box(&h)).unwrap()));
    c.bench_function("coset_invariants", |b| b.iter(|| coset_invariants(black_box(&prod)).unwrap()));
}

fn characteristic(c: &mut Criterion) {
    let g = coset(5, 2, 4);
    let lambda = ProjectivePoint::ratio(5, 2);
    c.bench_function("char_function/support4", |b| b.iter(|| char_function(black_box(&g), &lambda).unwrap()));
}

fn fixed(c: &mut Criterion) {
    let mut group = c.benchmark_group("fixed_subspace");
    group.sample_size(10);
    for n in [6, 10] {
        group.bench_with_input(BenchmarkId::new("d2_alpha2", n), &n, |b, &n| {
            b.iter(|| fixed_subspace(TensorRep::new(n, 2), 2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, compose, equality, characteristic, fixed);
criterion_main!(benches);
