use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use strata_core::exec;
use strata_core::invariants::strata_rows;
use strata_core::recursion::StrataSequences;
use strata_core::series::s_series;

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn series_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    let s = s_series(120);
    for (name, parallel) in MODES {
        exec::set_parallel(parallel);
        group.bench_function(BenchmarkId::new(name, 120), |b| b.iter(|| s.mul(&s)));
    }
    group.finish();
}

fn sequences(c: &mut Criterion) {
    let mut group = c.benchmark_group("sequences");
    group.sample_size(10);
    for (name, parallel) in MODES {
        exec::set_parallel(parallel);
        group.bench_function(BenchmarkId::new(name, 30), |b| {
            b.iter(|| StrataSequences::compute(30).unwrap())
        });
    }
    group.finish();
}

fn rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("strata_rows");
    group.sample_size(10);
    let seq = StrataSequences::compute(40).unwrap();
    for (name, parallel) in MODES {
        exec::set_parallel(parallel);
        group.bench_function(BenchmarkId::new(name, 40), |b| {
            b.iter(|| strata_rows(&seq, 512).unwrap())
        });
    }
    group.finish();
    exec::set_parallel(true);
}

criterion_group!(benches, series_mul, sequences, rows);
criterion_main!(benches);
