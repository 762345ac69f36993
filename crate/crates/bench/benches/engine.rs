//! Throughput of parsing, proof checking, frame enumeration and
//! countermodel search.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mqr_core::search::{enumerate_frames, find_countermodel, SearchBudget};
use mqr_core::syntax::parse_formula;
use mqr_core::{check, parse_script, System};

const SCRIPTS: [(&str, &str); 4] = [
    ("outcome_stable", include_str!("../../cli/corpus/msqr/outcome_stable.prf")),
    ("measurement_four", include_str!("../../cli/corpus/msqr/measurement_four.prf")),
    ("box_diamond", include_str!("../../cli/corpus/msqr/box_diamond.prf")),
    ("classical_settled", include_str!("../../cli/corpus/mspqr/classical_settled.prf")),
];

fn parse(c: &mut Criterion) {
    let src = "x : [M] (r0 <-> [M] r0) -> <> (r1 & ~[] (r0 | r2))";
    c.bench_function("parse_formula", |b| b.iter(|| parse_formula(black_box(src)).unwrap()));
    c.bench_function("parse_script", |b| b.iter(|| parse_script(black_box(SCRIPTS[0].1)).unwrap()));
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for (name, src) in SCRIPTS {
        let script = parse_script(src).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &script, |b, s| {
            b.iter(|| check(s, s.system))
        });
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_frames");
    for system in [System::Msqr, System::Mspqr] {
        for n in 1..=4 {
            group.bench_with_input(BenchmarkId::new(system.name(), n), &n, |b, &n| {
                b.iter(|| enumerate_frames(system, n).unwrap().count())
            });
        }
    }
    group.finish();
}

fn countermodel(c: &mut Criterion) {
    let mut group = c.benchmark_group("countermodel");
    group.sample_size(10);
    let cases = [
        ("refutable", "x : <M> r0 -> [M] r0"),
        ("valid", "x : [M] (r0 <-> [M] r0)"),
    ];
    for (name, src) in cases {
        let alpha = parse_formula(src).unwrap();
        for n in [2, 3] {
            let budget = SearchBudget::new(n);
            group.bench_with_input(BenchmarkId::new(name, n), &budget, |b, budget| {
                b.iter(|| find_countermodel(System::Msqr, &[], &alpha, budget).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, parse, kernel, enumerate, countermodel);
criterion_main!(benches);
