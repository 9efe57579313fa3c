use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use critqfi::analysis::{peak_qfi, EvalSettings, PeakSearch};
use critqfi::uncertainty::{averaged_qfi, averaged_qfi_lowrank};
use critqfi_bench::{critical_belief, ising, DENSE_SIZES, LOWRANK_SIZES};
use std::hint::black_box;

fn dense_vs_lowrank(c: &mut Criterion) {
    let mut group = c.benchmark_group("averaged_qfi");
    group.sample_size(10);
    let belief = critical_belief(64);
    for n in DENSE_SIZES {
        group.bench_with_input(BenchmarkId::new("dense", n), &n, |b, &n| {
            b.iter(|| averaged_qfi(ising(n), 1.0, black_box(&belief)).unwrap())
        });
    }
    for n in LOWRANK_SIZES {
        group.bench_with_input(BenchmarkId::new("lowrank", n), &n, |b, &n| {
            b.iter(|| averaged_qfi_lowrank(ising(n), 1.0, black_box(&belief)).unwrap())
        });
    }
    group.finish();
}

fn nodes(c: &mut Criterion) {
    let mut group = c.benchmark_group("lowrank_nodes");
    group.sample_size(10);
    for m in [16, 64, 256] {
        let belief = critical_belief(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &belief, |b, belief| {
            b.iter(|| averaged_qfi_lowrank(ising(64), 1.0, black_box(belief)).unwrap())
        });
    }
    group.finish();
}

fn peak(c: &mut Criterion) {
    let mut group = c.benchmark_group("peak_qfi");
    group.sample_size(10);
    let search = PeakSearch::window(1.0, 0.3, 31);
    let settings = EvalSettings::default();
    group.bench_function("tfim_n32_sigma0.01", |b| {
        b.iter(|| peak_qfi(ising(32), 0.01, black_box(&search), &settings).unwrap())
    });
    group.finish();
}

criterion_group!(benches, dense_vs_lowrank, nodes, peak);
criterion_main!(benches);
