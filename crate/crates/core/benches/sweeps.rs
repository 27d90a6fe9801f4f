use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sl2_synthesis::family::{lift, optimal_horizon, GeodesicParam};
use sl2_synthesis::sweep::{optimal_paths, s_int_sweep, solve_batch, Exec};
use sl2_synthesis::synthesis::Tolerances;
use sl2_synthesis::Mat2;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn targets(n: usize) -> Vec<(Mat2, Mat2)> {
    (0..n)
        .map(|i| {
            let u = (i as f64 + 0.5) / n as f64;
            let c = 0.2 + 2.5 * u;
            let t = 2.0 * optimal_horizon(c) * (0.1 + 0.8 * ((7 * i) % n) as f64 / n as f64);
            (Mat2::IDENTITY, lift(GeodesicParam::new(c, 6.0 * u), t))
        })
        .collect()
}

fn bench_solve(cr: &mut Criterion) {
    let pairs = targets(256);
    let tol = Tolerances::default();
    let mut g = cr.benchmark_group("solve_batch");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, pairs.len()), &pairs, |b, p| {
            b.iter(|| solve_batch(exec, black_box(p), &tol))
        });
    }
    g.finish();
}

fn bench_s_int(cr: &mut Criterion) {
    let cs: Vec<f64> = (1..=2000).map(|i| 3.0 * i as f64 / 2000.0).collect();
    let mut g = cr.benchmark_group("s_int_sweep");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, cs.len()), &cs, |b, c| {
            b.iter(|| s_int_sweep(exec, black_box(c)))
        });
    }
    g.finish();
}

fn bench_paths(cr: &mut Criterion) {
    let cs: Vec<f64> = (1..=64).map(|i| -2.0 + 4.0 * i as f64 / 65.0).collect();
    let mut g = cr.benchmark_group("optimal_paths");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, cs.len()), &cs, |b, c| {
            b.iter(|| optimal_paths(exec, black_box(c), 600, 20.0))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_solve, bench_s_int, bench_paths);
criterion_main!(benches);
