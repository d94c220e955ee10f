use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cdclwidth_bench::solver_fixtures;
use cdclwidth_core::{solve, Scheme, SolverConfig};

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (name, formula) in solver_fixtures() {
        for scheme in [Scheme::Decision, Scheme::FirstUip] {
            let cfg = SolverConfig {
                record_trace: false,
                ..SolverConfig::new(scheme, 1)
            };
            group.bench_with_input(BenchmarkId::new(scheme.name(), &name), &formula, |b, f| {
                b.iter(|| solve(black_box(f), &cfg))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, solver);
criterion_main!(benches);
