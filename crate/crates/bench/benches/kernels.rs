use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tightcert_bench::{element, fp, instance, ring, FERMAT, QUINTIC};
use tightcert_core::cohomology;
use tightcert_core::decide::{batch_decide, decide};
use tightcert_core::frobenius;
use tightcert_core::syzygy;
use tightcert_core::{DecideOptions, Field};

fn linalg(c: &mut Criterion) {
    let (r, i) = instance(Field::Rational, QUINTIC, &["x^4", "y^4", "z^4"]);
    c.bench_function("ideal_matrix_rank_quintic_m8", |b| {
        b.iter(|| syzygy::ideal_matrix(&r, &i, black_box(8)).unwrap().rank())
    });
    let (r7, i7) = instance(fp(7), QUINTIC, &["x^4", "y^4", "z^4"]);
    c.bench_function("relations_quintic_f7_k8", |b| {
        b.iter(|| syzygy::relations(&r7, &i7, black_box(8)).unwrap().len())
    });
}

fn ring_ops(c: &mut Criterion) {
    let r = ring(Field::Rational, QUINTIC);
    let f = element(&r, "x^3*y^2+y*z^4+x*y*z^3");
    c.bench_function("normal_form_pow3_quintic", |b| b.iter(|| r.pow(black_box(&f), 3)));
}

fn cohomology_kernels(c: &mut Criterion) {
    let r = ring(Field::Rational, QUINTIC);
    let pair = cohomology::select_pair(&r, 0).unwrap();
    c.bench_function("cech_h1_quintic_a0", |b| {
        b.iter(|| cohomology::cech_h1_dim(&r, black_box(0), &pair, None).unwrap())
    });
}

fn deciders(c: &mut Criterion) {
    let (r, i) = instance(Field::Rational, FERMAT, &["x^2", "y^2", "z^2"]);
    let f = element(&r, "x*y*z");
    let opts = DecideOptions::default();
    c.bench_function("decide_fermat_xyz", |b| b.iter(|| decide(&r, &i, black_box(&f), &opts).unwrap()));
    let (q, qi) = instance(Field::Rational, QUINTIC, &["x^4", "y^4", "z^4"]);
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    group.bench_function("batch_decide_quintic_m6", |b| {
        b.iter(|| batch_decide(&q, &qi, black_box(6), &opts).unwrap())
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let (r, i) = instance(fp(7), FERMAT, &["x^2", "y^2", "z^2"]);
    let f = element(&r, "x*y*z");
    let z = element(&r, "z");
    let mut group = c.benchmark_group("frobenius");
    group.sample_size(10);
    group.bench_function("tight_evidence_fermat_f7_q49", |b| {
        b.iter(|| frobenius::tight_evidence(&r, &i, &f, &z, black_box(49)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, linalg, ring_ops, cohomology_kernels, deciders, oracle);
criterion_main!(benches);
