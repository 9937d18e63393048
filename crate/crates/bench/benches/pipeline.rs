use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use crsym_bench::{prepared, series, E5};
use crsym_core::{equivalent, normalize, parse_map, pushforward};

fn bench_normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize_e5");
    for w in [12u32, 16, 20] {
        let m = prepared(E5, w);
        group.bench_with_input(BenchmarkId::from_parameter(w), &m, |b, m| {
            b.iter(|| normalize(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn bench_pushforward(c: &mut Criterion) {
    let mut group = c.benchmark_group("pushforward_e5");
    for w in [12u32, 16, 20] {
        let m = prepared(E5, w);
        let map = parse_map("z + (1/2)*z^2 + (i)*z*w", "w + (1/3i)*w^2 + z^5", 4, w).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(w), &(m, map), |b, (m, map)| {
            b.iter(|| pushforward(black_box(m), black_box(map)).unwrap())
        });
    }
    group.finish();
}

fn bench_equivalence(c: &mut Criterion) {
    let a = series(E5, 20);
    let flipped = series("z^2*zb^2 - z^6*zb^2 - z^2*zb^6", 20);
    let scaled = series("z^2*zb^2 + (1/16)*z^6*zb^2 + (1/16)*z^2*zb^6", 20);
    c.bench_function("equivalent_e5_sign_flip", |b| {
        b.iter(|| equivalent(black_box(&a), black_box(&flipped)).unwrap())
    });
    c.bench_function("equivalent_e5_dilation", |b| {
        b.iter(|| equivalent(black_box(&a), black_box(&scaled)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_pushforward,
    bench_equivalence
);
criterion_main!(benches);
