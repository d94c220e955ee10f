use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cdclwidth_bench::absorption_fixture;
use cdclwidth_core::absorption::{absorbed, absorbed_at_oracle, entails, find_beneficial_round};
use cdclwidth_core::harness::{generate_formula, FormulaFamily};
use cdclwidth_core::saturate_bounded_width;

fn absorption(c: &mut Criterion) {
    let (db, clause) = absorption_fixture();
    let lit = clause.literals()[0];
    c.bench_function("absorbed/dual", |b| b.iter(|| absorbed(black_box(&db), black_box(&clause))));
    c.bench_function("absorbed/oracle", |b| {
        b.iter(|| absorbed_at_oracle(black_box(&db), black_box(&clause), lit))
    });
    c.bench_function("entails", |b| b.iter(|| entails(black_box(&db), black_box(&clause))));
    c.bench_function("beneficial/search", |b| {
        b.iter(|| find_beneficial_round(black_box(&db), black_box(&clause)))
    });
}

fn saturation(c: &mut Criterion) {
    let php = generate_formula(&FormulaFamily::Pigeonhole { pigeons: 3 }).unwrap();
    c.bench_function("saturate/php3/w3", |b| b.iter(|| saturate_bounded_width(black_box(&php), 3)));
    let chain = generate_formula(&FormulaFamily::ChainUnsat { n: 40 }).unwrap();
    c.bench_function("saturate/chain40/w2", |b| b.iter(|| saturate_bounded_width(black_box(&chain), 2)));
}

criterion_group!(benches, absorption, saturation);
criterion_main!(benches);
