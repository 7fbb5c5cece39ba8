//! Distortion metrics and the binary-vs-Fibonacci comparison.
//!
//! * `MSE = Σ (f_ij - g_ij)^2 / (M N)` over all pixels,
//! * `PSNR = 10 log10(L^2 / MSE)` with `L = 2^depth - 1` unless overridden,
//! * `WSE(l) = W(l)^2`, the worst-case squared error of one pixel whose
//!   digit `l` toggles, and `WMSE(l) = w · h · W(l)^2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bounds::{pow_f64, Enclosure, Verdict};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::imageio::GrayImage;
use crate::numsys::{build_system, NumberSystem, SystemKind};
use crate::rng::SplitMix64;
use crate::root::{find_alpha, AlphaRoot, DEFAULT_TOLERANCE};
use crate::sequence::{generate_sequence, PSequence};
use crate::stego::{capacity, embed, EmbedConfig, TraversalMode};

/// XORed into the comparison seed to derive the message bit stream.
pub const MESSAGE_STREAM: u64 = 0x6D65_7373_6167_6521;

pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if !a.same_shape(b) {
        return Err(Error::DimensionMismatch);
    }
    let sum: u128 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            u128::from(d * d)
        })
        .sum();
    Ok(sum as f64 / a.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    /// Identical images. Compares above every finite value.
    Infinite,
}

impl Psnr {
    pub fn db(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Psnr::Infinite
    }

    pub fn format(self, precision: usize) -> String {
        match self {
            Psnr::Finite(v) => format!("{v:.precision$}"),
            Psnr::Infinite => "inf".to_owned(),
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(f.precision().unwrap_or(6)))
    }
}

impl Serialize for Psnr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Psnr::Finite(v) => s.serialize_f64(*v),
            Psnr::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn psnr_from_mse(mse: f64, peak: f64) -> Psnr {
    if mse == 0.0 {
        Psnr::Infinite
    } else {
        Psnr::Finite(10.0 * (peak * peak / mse).log10())
    }
}

/// `peak` defaults to the images' maximum sample value.
pub fn psnr(a: &GrayImage, b: &GrayImage, peak: Option<f64>) -> Result<Psnr> {
    let m = mse(a, b)?;
    Ok(psnr_from_mse(m, peak.unwrap_or(a.max_value() as f64)))
}

pub fn wse(system: &NumberSystem, plane: usize) -> Result<u128> {
    let w = system.weight(plane).ok_or(Error::PlaneOutOfRange {
        plane,
        planes: system.planes(),
    })?;
    Ok(u128::from(w) * u128::from(w))
}

pub fn wmse(system: &NumberSystem, plane: usize, width: usize, height: usize) -> Result<u128> {
    Ok(width as u128 * height as u128 * wse(system, plane)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SandwichIndexing {
    /// `(α²)^(l-p) < F_p(l)² < (α²)^l`, sequence index equal to the plane.
    Sequence,
    /// `(α²)^l < W(l)² < (α²)^(l+p)` for the radix weight `W(l) = F_p(l+p)`.
    Radix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichCheck {
    pub p: u32,
    pub plane: usize,
    pub indexing: SandwichIndexing,
    pub lower: f64,
    #[serde(serialize_with = "crate::serde_big::serialize")]
    pub weight_sq: BigUint,
    pub upper: f64,
    pub verdict: Verdict,
}

/// Certified per-pixel WMSE sandwich for one plane. `None` where the bound does
/// not apply (`l <= p` for sequence indexing, `l = 0` for radix indexing) or the
/// sequence is too short.
pub fn weight_sandwich(
    root: &AlphaRoot,
    seq: &PSequence,
    plane: usize,
    indexing: SandwichIndexing,
) -> Option<SandwichCheck> {
    let p = root.p as usize;
    let (index, lo_exp, hi_exp) = match indexing {
        SandwichIndexing::Sequence if plane > p => (plane, 2 * (plane - p), 2 * plane),
        SandwichIndexing::Radix if plane > 0 => (plane + p, 2 * plane, 2 * (plane + p)),
        _ => return None,
    };
    let term = seq.term(index)?;
    let weight_sq = term * term;
    let exact = Dyadic::from(&weight_sq);
    let enc = Enclosure::new(root);
    let verdict = enc
        .power_below(lo_exp as u32, &exact)
        .and(enc.power_above(hi_exp as u32, &exact));
    Some(SandwichCheck {
        p: root.p,
        plane,
        indexing,
        lower: pow_f64(root.value, lo_exp as u32),
        weight_sq,
        upper: pow_f64(root.value, hi_exp as u32),
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub system: SystemKind,
    pub plane: usize,
    pub weight: u64,
    pub wse_per_pixel: u128,
    pub wmse: u128,
    pub mse: f64,
    pub psnr_db: Psnr,
    pub peak: f64,
    pub width: usize,
    pub height: usize,
    pub embedded_bits: usize,
    pub capacity_ratio: f64,
    pub sandwich_sequence: Option<SandwichCheck>,
    pub sandwich_radix: Option<SandwichCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub system: SystemKind,
    pub plane: usize,
    pub outcome: Result<DistortionReport>,
}

impl Serialize for CompareRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CompareRow", 4)?;
        st.serialize_field("system", &self.system)?;
        st.serialize_field("plane", &self.plane)?;
        match &self.outcome {
            Ok(r) => {
                st.serialize_field("report", r)?;
                st.serialize_field("error", &Option::<String>::None)?;
            }
            Err(e) => {
                st.serialize_field("report", &Option::<DistortionReport>::None)?;
                st.serialize_field("error", &format!("{}: {e}", e.kind()))?;
            }
        }
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Bits(Vec<bool>),
    /// Fill every eligible pixel with bits from `SplitMix64(seed ^ MESSAGE_STREAM)`.
    FullCapacity,
}

/// Embeds the payload once per (system, plane) cell with a seeded permutation
/// and measures the result. Rows are sorted by `(plane, system)`; a failing
/// cell records its error and does not abort the others.
pub fn compare(
    cover: &GrayImage,
    payload: &Payload,
    planes: &[usize],
    systems: &[SystemKind],
    seed: u64,
) -> Vec<CompareRow> {
    let mut theory: BTreeMap<u32, (AlphaRoot, PSequence)> = BTreeMap::new();
    let max_plane = planes.iter().copied().max().unwrap_or(0);

    let mut rows = Vec::new();
    for &kind in systems {
        let system = build_system(kind, cover.depth());
        if let (SystemKind::FibonacciP(p), Ok(_)) = (kind, &system) {
            if let std::collections::btree_map::Entry::Vacant(slot) = theory.entry(p) {
                if let (Ok(root), Ok(seq)) = (
                    find_alpha(p, DEFAULT_TOLERANCE),
                    generate_sequence(p, max_plane + p as usize),
                ) {
                    slot.insert((root, seq));
                }
            }
        }
        for &plane in planes {
            let outcome = system.clone().and_then(|sys| {
                let th = match kind {
                    SystemKind::FibonacciP(p) => theory.get(&p),
                    SystemKind::Binary => None,
                };
                measure(cover, payload, sys, plane, seed, th)
            });
            rows.push(CompareRow {
                system: kind,
                plane,
                outcome,
            });
        }
    }
    rows.sort_by(|a, b| match a.plane.cmp(&b.plane) {
        Ordering::Equal => a.system.cmp(&b.system),
        o => o,
    });
    rows
}

fn full_capacity_message(len: usize, seed: u64) -> Vec<bool> {
    let mut rng = SplitMix64::new(seed ^ MESSAGE_STREAM);
    (0..len).map(|_| rng.next_bit()).collect()
}

fn measure(
    cover: &GrayImage,
    payload: &Payload,
    system: NumberSystem,
    plane: usize,
    seed: u64,
    theory: Option<&(AlphaRoot, PSequence)>,
) -> Result<DistortionReport> {
    let kind = system.kind();
    let weight = system.weight(plane).ok_or(Error::PlaneOutOfRange {
        plane,
        planes: system.planes(),
    })?;
    let wse_per_pixel = wse(&system, plane)?;
    let wmse_total = wmse(&system, plane, cover.width(), cover.height())?;
    let cfg = EmbedConfig::new(system, plane, seed, TraversalMode::SeededPermutation)?;

    let message = match payload {
        Payload::Bits(bits) => bits.clone(),
        Payload::FullCapacity => full_capacity_message(capacity(cover, &cfg)?, seed),
    };
    let (stego, embedded_bits) = if message.is_empty() && *payload == Payload::FullCapacity {
        (cover.clone(), 0)
    } else {
        let res = embed(cover, &message, &cfg)?;
        (res.stego_image, res.embedded_count)
    };

    let peak = cover.max_value() as f64;
    let m = mse(cover, &stego)?;
    let (sandwich_sequence, sandwich_radix) = match theory {
        Some((root, seq)) => (
            weight_sandwich(root, seq, plane, SandwichIndexing::Sequence),
            weight_sandwich(root, seq, plane, SandwichIndexing::Radix),
        ),
        None => (None, None),
    };
    Ok(DistortionReport {
        system: kind,
        plane,
        weight,
        wse_per_pixel,
        wmse: wmse_total,
        mse: m,
        psnr_db: psnr_from_mse(m, peak),
        peak,
        width: cover.width(),
        height: cover.height(),
        embedded_bits,
        capacity_ratio: embedded_bits as f64 / cover.len() as f64,
        sandwich_sequence,
        sandwich_radix,
    })
}

/// CSV with header `system,plane,weight,wse,wmse,mse,psnr_db,capacity`.
/// Failed cells leave the measured columns empty.
pub fn compare_csv(rows: &[CompareRow], precision: usize) -> String {
    let mut out = String::from("system,plane,weight,wse,wmse,mse,psnr_db,capacity\n");
    for row in rows {
        match &row.outcome {
            Ok(r) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{:.*},{},{:.*}",
                    r.system,
                    r.plane,
                    r.weight,
                    r.wse_per_pixel,
                    r.wmse,
                    precision,
                    r.mse,
                    r.psnr_db.format(precision),
                    precision,
                    r.capacity_ratio
                );
            }
            Err(_) => {
                let _ = writeln!(out, "{},{},,,,,,", row.system, row.plane);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imageio::{synth, SynthKind};

    fn img(samples: Vec<u16>, w: usize, h: usize) -> GrayImage {
        GrayImage::new(w, h, 8, samples).unwrap()
    }

    #[test]
    fn mse_examples() {
        let a = synth(SynthKind::SeededNoise(3), 64, 64, 8).unwrap();
        assert_eq!(mse(&a, &a).unwrap(), 0.0);

        let base = synth(SynthKind::Constant(100), 64, 64, 8).unwrap();
        let mut s = base.samples().to_vec();
        s[77] += 16;
        assert_eq!(mse(&base, &img(s, 64, 64)).unwrap(), 0.0625);

        let plus_one: Vec<u16> = base.samples().iter().map(|v| v + 1).collect();
        assert_eq!(mse(&base, &img(plus_one, 64, 64)).unwrap(), 1.0);

        let other = synth(SynthKind::Constant(0), 4, 4, 8).unwrap();
        assert_eq!(mse(&base, &other), Err(Error::DimensionMismatch));
    }

    #[test]
    fn psnr_examples() {
        let a = synth(SynthKind::Gradient, 16, 2, 8).unwrap();
        assert_eq!(psnr(&a, &a, None).unwrap(), Psnr::Infinite);
        let v = psnr_from_mse(0.0625, 255.0).db();
        // 10 log10(65025 / 0.0625) = 10 log10(1040400)
        assert!((v - 60.172).abs() < 1e-3, "{v}");
        assert_eq!(psnr_from_mse(255.0 * 255.0, 255.0), Psnr::Finite(0.0));
        assert!(Psnr::Infinite > Psnr::Finite(1e9));
        assert_eq!(Psnr::Infinite.to_string(), "inf");
    }

    #[test]
    fn worst_case_errors() {
        let bin = build_system(SystemKind::Binary, 8).unwrap();
        let fib = build_system(SystemKind::FibonacciP(1), 8).unwrap();
        assert_eq!(wmse(&bin, 3, 1, 1).unwrap(), 64);
        assert_eq!(wmse(&fib, 3, 1, 1).unwrap(), 25);
        assert_eq!(wmse(&bin, 0, 1, 1).unwrap(), 1);
        assert_eq!(wmse(&fib, 0, 1, 1).unwrap(), 1);
        assert_eq!(wmse(&fib, 3, 64, 64).unwrap(), 25 * 4096);
        assert!(wmse(&bin, 8, 1, 1).is_err());
    }

    #[test]
    fn sandwich_indexings() {
        let root = find_alpha(1, DEFAULT_TOLERANCE).unwrap();
        let seq = generate_sequence(1, 20).unwrap();
        // F_1(5) = 8: 2.618^4 ≈ 46.98 < 64 < 2.618^5 ≈ 122.99
        let seq_check = weight_sandwich(&root, &seq, 5, SandwichIndexing::Sequence).unwrap();
        assert_eq!(seq_check.weight_sq, BigUint::from(64u32));
        assert!((seq_check.lower - 46.979).abs() < 1e-3);
        assert!((seq_check.upper - 122.992).abs() < 1e-3);
        assert_eq!(seq_check.verdict, Verdict::Holds);
        // W(5) = 13: 2.618^5 < 169 < 2.618^6
        let radix = weight_sandwich(&root, &seq, 5, SandwichIndexing::Radix).unwrap();
        assert_eq!(radix.weight_sq, BigUint::from(169u32));
        assert_eq!(radix.verdict, Verdict::Holds);

        assert!(weight_sandwich(&root, &seq, 1, SandwichIndexing::Sequence).is_none());
        assert!(weight_sandwich(&root, &seq, 0, SandwichIndexing::Radix).is_none());
        assert!(weight_sandwich(&root, &seq, 30, SandwichIndexing::Sequence).is_none());
    }

    #[test]
    fn compare_sorted_and_isolated() {
        let cover = synth(SynthKind::SeededNoise(42), 32, 32, 8).unwrap();
        let rows = compare(
            &cover,
            &Payload::FullCapacity,
            &[9, 3, 0],
            &[SystemKind::FibonacciP(1), SystemKind::Binary],
            1,
        );
        let keys: Vec<(usize, SystemKind)> = rows.iter().map(|r| (r.plane, r.system)).collect();
        assert_eq!(
            keys,
            vec![
                (0, SystemKind::Binary),
                (0, SystemKind::FibonacciP(1)),
                (3, SystemKind::Binary),
                (3, SystemKind::FibonacciP(1)),
                (9, SystemKind::Binary),
                (9, SystemKind::FibonacciP(1)),
            ]
        );
        // Binary has no plane 9 at depth 8; the Fibonacci row still runs.
        assert!(matches!(
            rows[4].outcome,
            Err(Error::PlaneOutOfRange { .. })
        ));
        assert!(rows[5].outcome.is_ok());

        let bin3 = rows[2].outcome.as_ref().unwrap();
        let fib3 = rows[3].outcome.as_ref().unwrap();
        assert_eq!((bin3.wse_per_pixel, fib3.wse_per_pixel), (64, 25));
        assert!(fib3.psnr_db > bin3.psnr_db);
        assert!(bin3.mse <= bin3.wse_per_pixel as f64);
        assert!(fib3.sandwich_sequence.as_ref().unwrap().verdict.holds());

        let r0 = rows[0].outcome.as_ref().unwrap();
        let f0 = rows[1].outcome.as_ref().unwrap();
        assert_eq!(r0.wmse, f0.wmse);

        let csv = compare_csv(&rows, 6);
        assert!(csv.starts_with("system,plane,weight,wse,wmse,mse,psnr_db,capacity\n"));
        assert!(csv.contains("\nbinary,9,,,,,,\n"));
    }

    #[test]
    fn explicit_payload_too_long() {
        let cover = synth(SynthKind::Constant(3), 4, 4, 8).unwrap();
        let rows = compare(
            &cover,
            &Payload::Bits(vec![true; 17]),
            &[0],
            &[SystemKind::Binary],
            0,
        );
        assert!(matches!(
            rows[0].outcome,
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
