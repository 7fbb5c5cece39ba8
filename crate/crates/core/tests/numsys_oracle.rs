use fibp_core::{build_system, SystemKind};
use proptest::prelude::*;

/// Brute-force oracle: every bit vector of length m that satisfies the gap
/// rule and stays in range, grouped by value. Independent of `is_valid`.
fn enumerate_valid(weights: &[u64], gap: usize, max: u64) -> Vec<Vec<u32>> {
    let m = weights.len();
    let mut by_value: Vec<Vec<u32>> = vec![Vec::new(); max as usize + 1];
    for mask in 0u32..(1u32 << m) {
        let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if set.windows(2).any(|w| w[1] - w[0] < gap) {
            continue;
        }
        let v: u64 = set.iter().map(|&i| weights[i]).sum();
        if v <= max {
            by_value[v as usize].push(mask);
        }
    }
    by_value
}

#[test]
fn greedy_is_the_unique_valid_codeword() {
    for p in 1..=3 {
        let sys = build_system(SystemKind::FibonacciP(p), 8).unwrap();
        let table = enumerate_valid(sys.weights(), p as usize + 1, 255);
        for v in 0..=255u64 {
            let reps = &table[v as usize];
            assert_eq!(reps.len(), 1, "p={p} v={v} has {} codewords", reps.len());
            let greedy = sys.decompose(v).unwrap();
            let mask: u32 = greedy
                .bits()
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| 1 << i)
                .sum();
            assert_eq!(mask, reps[0]);
        }
    }
}

#[test]
fn round_trip_all_values() {
    let mut kinds = vec![SystemKind::Binary];
    kinds.extend((1..=5).map(SystemKind::FibonacciP));
    for kind in kinds {
        let sys = build_system(kind, 8).unwrap();
        for v in 0..=255 {
            let cw = sys.decompose(v).unwrap();
            assert!(cw.is_valid());
            assert_eq!(sys.recompose(&cw), v);
        }
    }
}

#[test]
fn more_planes_than_binary() {
    let bin = build_system(SystemKind::Binary, 8).unwrap();
    let fib = build_system(SystemKind::FibonacciP(1), 8).unwrap();
    assert_eq!((fib.planes(), bin.planes()), (12, 8));
    for p in 1..=6 {
        for depth in 2..=16 {
            let f = build_system(SystemKind::FibonacciP(p), depth).unwrap();
            assert!(f.planes() > depth as usize);
        }
    }
}

#[test]
fn weights_dominated_by_powers_of_two() {
    for p in 1..=6 {
        let sys = build_system(SystemKind::FibonacciP(p), 16).unwrap();
        for (i, &w) in sys.weights().iter().enumerate() {
            assert!(w <= 1 << i);
            if i >= 2 {
                assert!(w < 1 << i, "p={p} i={i}");
            }
        }
    }
}

proptest! {
    #[test]
    fn round_trip_any_depth(p in 1u32..12, depth in 1u32..=16, raw in any::<u64>()) {
        let sys = build_system(SystemKind::FibonacciP(p), depth).unwrap();
        let v = raw % (sys.max_value() + 1);
        let cw = sys.decompose(v).unwrap();
        prop_assert!(cw.is_valid());
        prop_assert_eq!(cw.value(), v);
    }
}
