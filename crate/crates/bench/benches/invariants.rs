use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qiso_core::charspec::{central_character, distinguish};
use qiso_core::invariants::{check_w_invariance, InvariantElement};
use qiso_core::rootdata::intersect_2lambda;
use qiso_core::{DominantWeight, RootSystem, Specialization};

fn sigma_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma");
    for (n, m) in [(2, 1), (4, 2), (6, 1), (6, 3)] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_m{m}")),
            &(n, m),
            |b, &(n, m)| b.iter(|| InvariantElement::sigma(black_box(n), black_box(m)).unwrap()),
        );
    }
    g.finish();
}

fn w_invariance(c: &mut Criterion) {
    let inv = InvariantElement::sigma(6, 1).unwrap();
    c.bench_function("w_invariance_n6_m1", |b| {
        b.iter(|| check_w_invariance(black_box(&inv)))
    });
}

fn lattice(c: &mut Criterion) {
    let sys = RootSystem::new(8).unwrap();
    c.bench_function("intersect_2lambda_n8", |b| {
        b.iter(|| intersect_2lambda(black_box(&sys)))
    });
}

fn characters(c: &mut Criterion) {
    let inv = InvariantElement::sigma(4, 2).unwrap();
    let lam = DominantWeight::new(vec![3, 1, 4, 1]).unwrap();
    c.bench_function("central_character_n4_m2", |b| {
        b.iter(|| central_character(black_box(&inv), black_box(&lam)).unwrap())
    });
    let q = Specialization::new(qiso_core::rational::int(2)).unwrap();
    let p = Specialization::new(qiso_core::rational::frac(1, 2)).unwrap();
    c.bench_function("distinguish_n2_b3_index1", |b| {
        b.iter(|| distinguish(2, black_box(&q), black_box(&p), 3, Some(&[1])).unwrap())
    });
}

criterion_group!(
    benches,
    sigma_construction,
    w_invariance,
    lattice,
    characters
);
criterion_main!(benches);
