use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ghcodes::oracle::{gap_scan, ScanMode};
use ghcodes::par::{self, Execution};
use ghcodes::{verify, GhCodec};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn gap_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("gap_scan");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(
            BenchmarkId::new(name, "a=-12,fast,1e5"),
            &exec,
            |b, &exec| b.iter(|| gap_scan(black_box(-12), 100_000, ScanMode::Fast, exec).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new(name, "a=-7,oracle,5e3"),
            &exec,
            |b, &exec| b.iter(|| gap_scan(black_box(-7), 5_000, ScanMode::Oracle, exec).unwrap()),
        );
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "a=-9,2000"), &exec, |b, &exec| {
            b.iter(|| verify(black_box(-9), 2000, exec).unwrap())
        });
    }
    group.finish();
}

fn encoding(c: &mut Criterion) {
    let codec = GhCodec::new(-3).unwrap();
    let values: Vec<u64> = (0..200_000u64)
        .map(|i| i.wrapping_mul(0x9e37_79b9) >> 20 | 1)
        .collect();
    let mut group = c.benchmark_group("encode_batch");
    group.throughput(Throughput::Elements(values.len() as u64));
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "a=-3"), &exec, |b, &exec| {
            b.iter(|| {
                par::map_slice(exec, &values, |&n| {
                    codec.encode(n).unwrap().map(|w| w.len())
                })
            })
        });
    }
    group.finish();

    let mut group = c.benchmark_group("encode_single");
    for n in [1_000u64, 1_000_000, u64::MAX / 3] {
        group.bench_with_input(BenchmarkId::new("fast", n), &n, |b, &n| {
            b.iter(|| codec.encode_fast(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("simple", n), &n, |b, &n| {
            b.iter(|| codec.encode_simple(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gap_scans, verification, encoding);
criterion_main!(benches);
