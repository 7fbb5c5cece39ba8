use fibp_core::metrics::MESSAGE_STREAM;
use fibp_core::{
    build_system, compare, find_alpha, generate_sequence, synth, weight_sandwich, wse, Payload,
    SandwichIndexing, SynthKind, SystemKind, DEFAULT_TOLERANCE,
};

#[test]
fn squared_weights_below_binary() {
    let bin = build_system(SystemKind::Binary, 16).unwrap();
    for p in 1..=6 {
        let fib = build_system(SystemKind::FibonacciP(p), 16).unwrap();
        for l in 2..16 {
            assert!(wse(&fib, l).unwrap() < wse(&bin, l).unwrap());
            assert_eq!(wse(&bin, l).unwrap(), 4u128.pow(l as u32));
        }
    }
}

#[test]
fn sandwich_both_indexings() {
    for p in 1..=5u32 {
        let root = find_alpha(p, DEFAULT_TOLERANCE).unwrap();
        let seq = generate_sequence(p, 40 + p as usize).unwrap();
        for l in 1..=40 {
            if l > p as usize {
                let c = weight_sandwich(&root, &seq, l, SandwichIndexing::Sequence).unwrap();
                assert!(c.verdict.holds(), "sequence p={p} l={l}");
            }
            let c = weight_sandwich(&root, &seq, l, SandwichIndexing::Radix).unwrap();
            assert!(c.verdict.holds(), "radix p={p} l={l}");
        }
    }
}

#[test]
fn measured_mse_never_exceeds_worst_case() {
    for seed in [1u64, 2, 3] {
        let cover = synth(SynthKind::SeededNoise(seed), 48, 48, 8).unwrap();
        let rows = compare(
            &cover,
            &Payload::FullCapacity,
            &(0..12).collect::<Vec<_>>(),
            &[
                SystemKind::Binary,
                SystemKind::FibonacciP(1),
                SystemKind::FibonacciP(2),
            ],
            seed,
        );
        for row in rows.iter().filter_map(|r| r.outcome.as_ref().ok()) {
            assert!(row.mse <= row.wse_per_pixel as f64, "{row:?}");
            assert_eq!(row.wmse, 48 * 48 * row.wse_per_pixel);
        }
    }
}

#[test]
fn distortion_grows_with_plane() {
    let cover = synth(SynthKind::SeededNoise(42), 64, 64, 8).unwrap();
    for (kind, top) in [(SystemKind::Binary, 8), (SystemKind::FibonacciP(1), 8)] {
        let planes: Vec<usize> = (0..top).collect();
        let rows = compare(&cover, &Payload::FullCapacity, &planes, &[kind], 42);
        let mses: Vec<f64> = rows
            .iter()
            .map(|r| r.outcome.as_ref().unwrap().mse)
            .collect();
        assert!(mses.windows(2).all(|w| w[0] <= w[1]), "{kind}: {mses:?}");
    }
}

#[test]
fn message_stream_constant_is_stable() {
    assert_eq!(MESSAGE_STREAM.to_be_bytes(), *b"message!");
}
