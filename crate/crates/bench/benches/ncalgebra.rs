use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qiso_core::ncalgebra::{casimir, check_relations, parse_element, Strategy};
use qiso_core::{Gen, NCElement, QScalar, Word};

fn word_12() -> NCElement {
    use Gen::*;
    NCElement::term(
        QScalar::one(),
        Word(vec![E, E, K, F, E, KInv, F, F, E, K, F, E]),
    )
}

fn normalize(c: &mut Criterion) {
    let e = word_12();
    c.bench_function("normalize_len12_leftmost", |b| {
        b.iter(|| black_box(&e).normalize_with(Strategy::Leftmost))
    });
    c.bench_function("normalize_len12_rightmost", |b| {
        b.iter(|| black_box(&e).normalize_with(Strategy::Rightmost))
    });
}

fn casimir_centrality(c: &mut Criterion) {
    let cas = casimir();
    c.bench_function("casimir_is_central", |b| {
        b.iter(|| black_box(&cas).is_central())
    });
}

fn parsing(c: &mut Criterion) {
    c.bench_function("parse_element", |b| {
        b.iter(|| parse_element(black_box("2*F^2*K^-1*E + (1/(q-q^-1))*K")).unwrap())
    });
}

fn relations(c: &mut Criterion) {
    c.bench_function("check_relations_n6", |b| {
        b.iter(|| check_relations(black_box(6)).unwrap())
    });
}

criterion_group!(benches, normalize, casimir_centrality, parsing, relations);
criterion_main!(benches);
