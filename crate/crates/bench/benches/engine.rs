use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tpcalc_bench::{curve, quadruple_points, triple_nodes};
use tpcalc_core::oracle::double_point_degree;
use tpcalc_core::tpcore::{count_points, expand_source, expand_target};

fn expansions(c: &mut Criterion) {
    let (db, t) = quadruple_points();
    c.bench_function("expand_target A0^4", |b| {
        b.iter(|| expand_target(black_box(&t), &db).unwrap())
    });
    c.bench_function("expand_source A0^4", |b| {
        b.iter(|| expand_source(black_box(&t), &db).unwrap())
    });
}

fn counts(c: &mut Criterion) {
    let (db, t, f) = triple_nodes(8);
    c.bench_function("roberts count d=8", |b| {
        b.iter(|| count_points(black_box(&f), &t, &db).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let curve = curve(6, 1);
    c.bench_function("double point resultant d=6", |b| {
        b.iter(|| double_point_degree(black_box(&curve)).unwrap())
    });
}

criterion_group!(benches, expansions, counts, oracle);
criterion_main!(benches);
