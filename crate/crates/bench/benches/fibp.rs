use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fibp_core::{
    build_system, embed, find_alpha, synth, verify_bounds, EmbedConfig, SynthKind, SystemKind,
    TraversalMode, DEFAULT_TOLERANCE,
};

fn roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_alpha");
    for p in [1, 2, 4, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| {
            b.iter(|| find_alpha(black_box(p), DEFAULT_TOLERANCE).unwrap())
        });
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_bounds");
    g.sample_size(10);
    for p in [1, 4, 8] {
        g.bench_with_input(BenchmarkId::new("n300", p), &p, |b, &p| {
            b.iter(|| verify_bounds(black_box(p), 300, DEFAULT_TOLERANCE).unwrap())
        });
    }
    g.finish();
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose_all_8bit");
    for kind in [
        SystemKind::Binary,
        SystemKind::FibonacciP(1),
        SystemKind::FibonacciP(3),
    ] {
        let sys = build_system(kind, 8).unwrap();
        g.bench_function(kind.to_string(), |b| {
            b.iter(|| {
                for v in 0..=255 {
                    black_box(sys.decompose(v).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn embedding(c: &mut Criterion) {
    let cover = synth(SynthKind::SeededNoise(7), 256, 256, 8).unwrap();
    let mut g = c.benchmark_group("embed_256x256");
    for kind in [SystemKind::Binary, SystemKind::FibonacciP(1)] {
        let cfg = EmbedConfig::new(
            build_system(kind, 8).unwrap(),
            3,
            7,
            TraversalMode::SeededPermutation,
        )
        .unwrap();
        let n = fibp_core::capacity(&cover, &cfg).unwrap();
        let message: Vec<bool> = (0..n).map(|i| i % 3 == 0).collect();
        g.bench_function(kind.to_string(), |b| {
            b.iter(|| embed(&cover, black_box(&message), &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, roots, bounds, decompose, embedding);
criterion_main!(benches);
