//! Build and per-operation timings: the splay forest against both array
//! oracles on a 10 000-element single cycle, plus construction scaling.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclefst::harness::execute;
use cyclefst::{FstPermutation, ImplKind, Permutation};
use cyclefst_bench::scripted;
use std::hint::black_box;
use std::time::Duration;

const N: u32 = 10_000;
const BATCH: usize = 512;

fn quick(group: &mut criterion::BenchmarkGroup<'_, criterion::measurement::WallTime>) {
    group.sample_size(20);
    group.warm_up_time(Duration::from_millis(300));
    group.measurement_time(Duration::from_secs(1));
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    quick(&mut group);
    for n in [10_000u32, 100_000] {
        let cyclic = Permutation::cyclic(n);
        group.bench_with_input(BenchmarkId::new("cyclic", n), &cyclic, |b, p| {
            b.iter(|| black_box(FstPermutation::build(p)))
        });
        let random = Permutation::random(n, u64::from(n));
        group.bench_with_input(BenchmarkId::new("random", n), &random, |b, p| {
            b.iter(|| black_box(FstPermutation::build(p)))
        });
    }
    group.finish();
}

fn bench_mix(c: &mut Criterion, group_name: &str, mix_name: &str) {
    let mut group = c.benchmark_group(group_name);
    quick(&mut group);
    for kind in ImplKind::ALL {
        group.bench_function(kind.name(), |b| {
            let (mut store, ops) = scripted(kind, N, mix_name, BATCH);
            let mut at = 0usize;
            b.iter(|| {
                let cmd = ops[at % ops.len()];
                at += 1;
                black_box(execute(&mut store, cmd))
            });
        });
    }
    group.finish();
}

fn bench_queries(c: &mut Criterion) {
    bench_mix(c, "queries", "queries");
}

fn bench_distance(c: &mut Criterion) {
    bench_mix(c, "distance", "distance");
}

fn bench_transpositions(c: &mut Criterion) {
    bench_mix(c, "transpositions", "transpositions");
}

fn bench_uniform(c: &mut Criterion) {
    bench_mix(c, "uniform_mix", "uniform");
}

criterion_group!(
    benches,
    bench_build,
    bench_queries,
    bench_distance,
    bench_transpositions,
    bench_uniform
);
criterion_main!(benches);
