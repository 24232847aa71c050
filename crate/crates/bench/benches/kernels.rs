use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lr2d_bench::{
    caldirola_kanai_solution, numeric_config, numeric_solution, static_solution, BG_LABEL,
    PERELOMOV_LABEL,
};
use lr2d_core::coherent::{bg_expand, perelomov_expand};
use lr2d_core::ermakov::default_initial_conditions;
use lr2d_core::matrices::{build_rep, invariance_residual};
use lr2d_core::specfn::laguerre;
use lr2d_core::spectra::{gram_matrix, lr_phase};
use lr2d_core::uncertainty::dispersions_quadrature;
use lr2d_core::{ErmakovSolution, ModeIndex};

fn special_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("laguerre");
    for n in [4usize, 16, 64] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| laguerre(black_box(n), 2.0, black_box(7.5)))
        });
    }
    group.finish();
}

fn ermakov(c: &mut Criterion) {
    let cfg = numeric_config();
    let (r0, rd0) = default_initial_conditions(&cfg).unwrap();
    c.bench_function("ermakov_numeric_t10", |b| {
        b.iter(|| ErmakovSolution::solve_numeric(&cfg, r0, rd0, black_box(10.0), 1e-12).unwrap())
    });
    let es = numeric_solution(10.0);
    c.bench_function("lr_phase_numeric", |b| {
        b.iter(|| lr_phase(&es, ModeIndex::new(2, 1), black_box(7.0), 1e-10).unwrap())
    });
}

fn matrices(c: &mut Criterion) {
    let es = caldirola_kanai_solution();
    let mut group = c.benchmark_group("invariant_spectrum");
    for cutoff in [6usize, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(cutoff), &cutoff, |b, &cutoff| {
            b.iter(|| build_rep(&es, 0.7, cutoff).unwrap().invariant_spectrum())
        });
    }
    group.finish();
    c.bench_function("invariance_residual_n8", |b| {
        b.iter(|| invariance_residual(&es, black_box(0.7), 1e-5, 8).unwrap())
    });
}

fn wavefunctions(c: &mut Criterion) {
    let es = static_solution();
    let modes = ModeIndex::up_to(4);
    c.bench_function("gram_up_to_4", |b| b.iter(|| gram_matrix(&es, &modes, black_box(0.8)).unwrap()));
    let es = caldirola_kanai_solution();
    c.bench_function("dispersions_quadrature", |b| {
        b.iter(|| dispersions_quadrature(&es, ModeIndex::from_radial(2, 1), black_box(1.6)).unwrap())
    });
}

fn coherent(c: &mut Criterion) {
    let mut group = c.benchmark_group("coherent_expand");
    for ell in [0u32, 3] {
        group.bench_with_input(BenchmarkId::new("bg", ell), &ell, |b, &ell| {
            b.iter(|| bg_expand(black_box(BG_LABEL), ell).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("perelomov", ell), &ell, |b, &ell| {
            b.iter(|| perelomov_expand(black_box(PERELOMOV_LABEL), ell).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, special_functions, ermakov, matrices, wavefunctions, coherent);
criterion_main!(benches);
