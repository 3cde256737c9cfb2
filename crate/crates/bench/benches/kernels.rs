//! Benchmarks for the numerical kernels: twist rows, Bessel evaluation,
//! Fourier-coefficient c-sums, and the divisor-sum sieve.

use criterion::{criterion_group, criterion_main, Criterion};
use esms::eisenstein::{phi_classical, ClassicalRoute};
use esms::specfun::bessel_k;
use esms::{chars, CuspForm, PrecisionPolicy};
use esms_bench::fixture;
use num_complex::Complex64;
use std::hint::black_box;

fn bench_symbol_row(c: &mut Criterion) {
    let (_, _, cache) = fixture();
    c.bench_function("symbol_row_c550", |b| {
        b.iter(|| {
            // Rebuild from scratch each pass: measure the row kernel itself.
            let fresh = esms::SymbolCache::new(
                std::sync::Arc::new(CuspForm::level11(60_000)),
                PrecisionPolicy::default(),
            );
            black_box(fresh.row(black_box(550)).unwrap())
        })
    });
    let _ = cache;
}

fn bench_bessel(c: &mut Criterion) {
    let nu = Complex64::new(2.5, 0.0);
    c.bench_function("bessel_k_2p5", |b| {
        b.iter(|| black_box(bessel_k(black_box(nu), black_box(3.7)).unwrap()))
    });
}

fn bench_phi_classical(c: &mut Criterion) {
    let (_, chi, _) = fixture();
    let policy = PrecisionPolicy::default();
    let s = Complex64::new(2.0, 0.0);
    c.bench_function("phi_classical_ksum_c550", |b| {
        b.iter(|| {
            black_box(
                phi_classical(&chi, 1, s, ClassicalRoute::KloostermanSum, 550, &policy).unwrap(),
            )
        })
    });
}

fn bench_sigma_sieve(c: &mut Criterion) {
    let (_, chi, _) = fixture();
    let w = Complex64::new(4.0, 0.0);
    c.bench_function("sigma_chi_table_100k", |b| {
        b.iter(|| black_box(chars::sigma_chi_table(&chi, black_box(w), 100_000)))
    });
}

criterion_group!(
    kernels,
    bench_symbol_row,
    bench_bessel,
    bench_phi_classical,
    bench_sigma_sieve
);
criterion_main!(kernels);
