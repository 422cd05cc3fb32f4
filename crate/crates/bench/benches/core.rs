use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mscheme::corpus;
use mscheme::divisor::{class_group, picard_group};
use mscheme::ideal::{primary_decomposition, DecompositionOptions, MonoidIdeal};
use mscheme::lattice::smith_normal_form;
use mscheme::normalization::normalize;
use mscheme::{AffineMonoid, GroupElement};
use mscheme_bench::{dense_matrix, moment_curve_monoid};

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 24] {
        let m = dense_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

fn hilbert_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for n in [3, 4, 5] {
        let a = moment_curve_monoid(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| normalize(black_box(a))));
    }
    group.finish();
}

fn picard(c: &mut Criterion) {
    let mut group = c.benchmark_group("picard");
    group.sample_size(20);
    for n in [2, 3] {
        let x = corpus::projective(n);
        group.bench_with_input(BenchmarkId::new("projective", n), &x, |b, x| b.iter(|| picard_group(black_box(x))));
    }
    let h = corpus::hirzebruch(2);
    group.bench_function("class_group/hirzebruch_2", |b| b.iter(|| class_group(black_box(&h))));
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let ambient = AffineMonoid::free_commutative(3);
    let gens: Vec<GroupElement> =
        [[2, 1, 0], [0, 3, 1], [1, 0, 2], [1, 1, 1]].iter().map(|g| GroupElement::free(g)).collect();
    let ideal = MonoidIdeal::new(&ambient, &gens).expect("valid ideal");
    let opts = DecompositionOptions::default();
    c.bench_function("primary_decomposition/n3", |b| b.iter(|| primary_decomposition(black_box(&ideal), &opts)));
}

criterion_group!(benches, snf, hilbert_basis, picard, decomposition);
criterion_main!(benches);
