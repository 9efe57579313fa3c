use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use critqfi::models::{LmgParams, TfimParams};
use critqfi::qfi::{lmg_qfim_numeric, tfim_qfim_closed, tfim_qfim_numeric};
use std::hint::black_box;

fn tfim(c: &mut Criterion) {
    let mut group = c.benchmark_group("tfim_qfim");
    for n in [20, 200, 2000] {
        let p = TfimParams::new(1.0, 0.9, n).unwrap();
        group.bench_with_input(BenchmarkId::new("closed", n), &p, |b, p| {
            b.iter(|| tfim_qfim_closed(black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("numeric", n), &p, |b, p| {
            b.iter(|| tfim_qfim_numeric(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn lmg(c: &mut Criterion) {
    let mut group = c.benchmark_group("lmg_qfim_numeric");
    group.sample_size(20);
    for n in [20, 200, 1000] {
        let p = LmgParams::new(1.0, 0.9, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| lmg_qfim_numeric(black_box(p)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tfim, lmg);
criterion_main!(benches);
