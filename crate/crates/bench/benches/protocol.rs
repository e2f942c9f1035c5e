use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qkd_turbo::bb84::{sift, transmit, ChannelParams};
use qkd_turbo::harness::run_point;
use qkd_turbo::ExperimentConfig;

fn protocol(c: &mut Criterion) {
    let params = ChannelParams::new(0.5, 100_000, 3).unwrap();
    c.bench_function("transmit+sift/100k photons", |b| {
        b.iter(|| sift(&transmit(black_box(&params), 0).unwrap()).unwrap())
    });

    let config = ExperimentConfig::default();
    let mut group = c.benchmark_group("run_point");
    group.sample_size(20);
    group.bench_function("s=0.5/defaults", |b| {
        b.iter(|| run_point(black_box(0.5), &config).unwrap())
    });
    group.finish();
}

criterion_group!(benches, protocol);
criterion_main!(benches);
