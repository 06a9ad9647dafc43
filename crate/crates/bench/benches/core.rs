use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use sdr_core::bar::{bar_length_filtration, emss_check, reduced_bar, spectral_sequence, FiniteDGA};
use sdr_core::cochain::cochain_complex;
use sdr_core::derham::derham_check;
use sdr_core::forms::truncated_cohomology_of_a;
use sdr_core::homalg::{cohomology, Window};
use sdr_core::sset::{quotient_sphere, std_simplex, torus_presentation};

fn elimination(c: &mut Criterion) {
    let k = std_simplex(6);
    let complex = cochain_complex(&k);
    c.bench_function("cochain cohomology of the 6-simplex", |b| {
        b.iter(|| cohomology(black_box(&complex), Window::upto(6)))
    });
}

fn forms(c: &mut Criterion) {
    let torus = Arc::new(torus_presentation());
    c.bench_function("truncated forms on the torus, weight 3", |b| {
        b.iter(|| truncated_cohomology_of_a(torus.clone(), 3, Window::upto(2)).unwrap())
    });
    let s3 = Arc::new(quotient_sphere(3).unwrap());
    c.bench_function("de Rham check on S^3", |b| {
        b.iter(|| derham_check(s3.clone(), Window::upto(3), 8).unwrap())
    });
}

fn bar(c: &mut Criterion) {
    let a = FiniteDGA::truncated_polynomial(2, 2).unwrap().tensor(&FiniteDGA::exterior(3).unwrap()).unwrap();
    c.bench_function("reduced bar of H(S^2) ⊗ Λ(y), top 6", |b| b.iter(|| reduced_bar(black_box(&a), 6).unwrap()));
    let bar = reduced_bar(&a, 6).unwrap();
    let f = bar_length_filtration(&bar).unwrap();
    c.bench_function("bar-length spectral sequence, top 6", |b| {
        b.iter(|| spectral_sequence(black_box(&f), Window::upto(6), None).unwrap())
    });
    c.bench_function("EMSS check on H(S^2) ⊗ Λ(y)", |b| b.iter(|| emss_check(&a, Window::upto(6)).unwrap()));
}

criterion_group!(benches, elimination, forms, bar);
criterion_main!(benches);
