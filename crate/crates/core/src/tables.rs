//! Reproduction tables as CSV text with fixed file names.

use std::fmt::Write as _;

use crate::bounds::verify_bounds;
use crate::error::Result;
use crate::imageio::{synth, SynthKind};
use crate::metrics::{compare, compare_csv, weight_sandwich, Payload, SandwichIndexing};
use crate::numsys::SystemKind;
use crate::root::{find_alpha, DEFAULT_TOLERANCE};
use crate::sequence::{generate_sequence, RatioSequence};

pub const ROOTS: &str = "roots.csv";
pub const BOUNDS_P2: &str = "table1_bounds_p2.csv";
pub const RATIOS: &str = "table2_ratios.csv";
pub const WMSE_PSNR: &str = "table3_wmse_psnr.csv";
pub const SANDWICH: &str = "sandwich.csv";

pub const TABLE_FILES: [&str; 5] = [ROOTS, BOUNDS_P2, RATIOS, WMSE_PSNR, SANDWICH];

/// Side length of the synthetic noise cover used when no cover is given.
pub const DEFAULT_COVER_SIZE: usize = 64;

/// 64x64 depth-8 seeded-noise cover.
pub fn default_cover(seed: u64) -> Result<crate::imageio::GrayImage> {
    synth(
        SynthKind::SeededNoise(seed),
        DEFAULT_COVER_SIZE,
        DEFAULT_COVER_SIZE,
        8,
    )
}

/// `compare` over planes 0..=7 for binary, fib1 and fib2 with a
/// full-capacity message on [`default_cover`].
pub fn default_compare_csv(seed: u64, precision: usize) -> Result<String> {
    let cover = default_cover(seed)?;
    let rows = compare(
        &cover,
        &Payload::FullCapacity,
        &(0..8).collect::<Vec<_>>(),
        &[
            SystemKind::Binary,
            SystemKind::FibonacciP(1),
            SystemKind::FibonacciP(2),
        ],
        seed,
    );
    Ok(compare_csv(&rows, precision))
}

/// Every table as `(file name, contents)`, in [`TABLE_FILES`] order.
pub fn tables(seed: u64, precision: usize) -> Result<Vec<(&'static str, String)>> {
    let mut roots = String::from("p,alpha\n");
    for p in 1..=10 {
        let r = find_alpha(p, DEFAULT_TOLERANCE)?;
        let _ = writeln!(roots, "{p},{:.*}", precision, r.value);
    }

    let bounds = verify_bounds(2, 30, DEFAULT_TOLERANCE)?.to_csv(precision);

    let mut ratios = String::from("p,n,beta,alpha,abs_err\n");
    for p in 1..=6 {
        let alpha = find_alpha(p, DEFAULT_TOLERANCE)?;
        let csv =
            RatioSequence::from_sequence(&generate_sequence(p, 40)?).to_csv(alpha.value, precision);
        ratios.push_str(csv.split_once('\n').map_or("", |(_, body)| body));
    }

    let mut sandwich = String::from("p,l,indexing,lower,weight_sq,upper,verdict\n");
    for p in 1..=5u32 {
        let root = find_alpha(p, DEFAULT_TOLERANCE)?;
        let seq = generate_sequence(p, 40 + p as usize)?;
        for (indexing, name) in [
            (SandwichIndexing::Sequence, "sequence"),
            (SandwichIndexing::Radix, "radix"),
        ] {
            for l in 1..=40 {
                if let Some(c) = weight_sandwich(&root, &seq, l, indexing) {
                    let _ = writeln!(
                        sandwich,
                        "{p},{l},{name},{:.*e},{},{:.*e},{}",
                        precision,
                        c.lower,
                        c.weight_sq,
                        precision,
                        c.upper,
                        c.verdict.as_str(),
                    );
                }
            }
        }
    }

    Ok(vec![
        (ROOTS, roots),
        (BOUNDS_P2, bounds),
        (RATIOS, ratios),
        (WMSE_PSNR, default_compare_csv(seed, precision)?),
        (SANDWICH, sandwich),
    ])
}
