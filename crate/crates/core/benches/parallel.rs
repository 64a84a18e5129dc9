use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orrsom_core::c64;
use orrsom_core::eigensolver::{solve_pencil_with, SolverOptions};
use orrsom_core::enclosure::{region, BetaContext, Variant};
use orrsom_core::exec::Execution;
use orrsom_core::operator::{assemble_pencil, build_grid, Scheme, TestFunction};
use orrsom_core::profiles::{profile_bounds, solve_blasius, FlowProfile};

const POLICIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn blasius() -> FlowProfile {
    FlowProfile::blasius(solve_blasius(20.0, 1e-10, 1e-12).unwrap())
}

fn spectrum(c: &mut Criterion) {
    let g = build_grid(Scheme::TruncatedChebyshev, 96, 100.0).unwrap();
    let pencil = assemble_pencil(&blasius(), 0.179, 580.0, &g).unwrap();
    let mut group = c.benchmark_group("spectrum_n96");
    group.sample_size(10);
    for (name, execution) in POLICIES {
        let opts = SolverOptions { execution, ..SolverOptions::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_pencil_with(black_box(&pencil), &opts).unwrap())
        });
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let p = blasius();
    let reg = region(Variant::Thm33, 0.179, 580.0, &profile_bounds(&p, 2000).unwrap()).unwrap();
    let points: Vec<c64> = (0..100_000)
        .map(|k| {
            let t = k as f64 * 0.618_033_988_749_895;
            c64::new(-150.0 + 400.0 * t.fract(), -150.0 + 400.0 * (t * 7.0).fract())
        })
        .collect();
    let mut group = c.benchmark_group("membership_1e5");
    for (name, execution) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| reg.contains_many(black_box(&points), execution))
        });
    }
    group.finish();
}

fn beta_batch(c: &mut Criterion) {
    let g = build_grid(Scheme::TruncatedChebyshev, 128, 100.0).unwrap();
    let ctx = BetaContext::new(&g, &blasius(), 0.179, 580.0).unwrap();
    let us: Vec<TestFunction> = (0..64)
        .map(|k| {
            let s = k as f64 / 64.0;
            TestFunction::new(c64::new(1.0, s), 2, 0.5 + 1.5 * s, 0.8 * s - 0.4, 1.0).unwrap()
        })
        .collect();
    let mut group = c.benchmark_group("beta_batch_64");
    group.sample_size(10);
    for (name, execution) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| ctx.decompose_many(black_box(&us), execution)));
    }
    group.finish();
}

criterion_group!(benches, spectrum, membership, beta_batch);
criterion_main!(benches);
