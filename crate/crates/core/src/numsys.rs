//! Positional number systems for pixel values: classical binary and
//! Fibonacci-p. Each digit position is a (virtual) bit-plane.
//!
//! Fibonacci-p weights are `W(i) = F_p(i + p)`, i.e. the sequence with its
//! repeated leading ones removed: `1, 2, 3, 5, 8, ...` for `p = 1` and
//! `1, 2, 3, 4, 6, 9, ...` for `p = 2`. A codeword is valid when any two set
//! digits are at least `p + 1` positions apart, which makes the greedy
//! representation the unique one.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::generate_sequence;

pub const MAX_DEPTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemKind {
    Binary,
    FibonacciP(u32),
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::Binary => f.write_str("binary"),
            SystemKind::FibonacciP(p) => write!(f, "fib{p}"),
        }
    }
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "binary" {
            return Ok(SystemKind::Binary);
        }
        match s.strip_prefix("fib").map(str::parse::<u32>) {
            Some(Ok(0)) => Err(Error::ZeroOrder),
            Some(Ok(p)) => Ok(SystemKind::FibonacciP(p)),
            _ => Err(Error::UnknownSystem(s.to_owned())),
        }
    }
}

impl Serialize for SystemKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberSystem {
    kind: SystemKind,
    depth: u32,
    weights: Vec<u64>,
    gap: usize,
}

pub fn build_system(kind: SystemKind, depth: u32) -> Result<NumberSystem> {
    if !(1..=MAX_DEPTH).contains(&depth) {
        return Err(Error::UnsupportedDepth(depth));
    }
    let limit = 1u64 << depth;
    let (weights, gap) = match kind {
        SystemKind::Binary => ((0..depth).map(|i| 1u64 << i).collect(), 1),
        SystemKind::FibonacciP(0) => return Err(Error::ZeroOrder),
        SystemKind::FibonacciP(p) => {
            // Greedy codewords over W(0..m) cover exactly 0..W(m), so the
            // minimal m is the number of weights below 2^depth.
            let p_us = p as usize;
            let mut n_max = p_us + 2 * depth as usize + 4;
            let weights = loop {
                let seq = generate_sequence(p, n_max)?;
                let tail = &seq.terms()[p_us..];
                if tail
                    .last()
                    .and_then(ToPrimitive::to_u64)
                    .is_none_or(|w| w >= limit)
                {
                    break tail
                        .iter()
                        .map_while(|t| t.to_u64().filter(|&w| w < limit))
                        .collect::<Vec<_>>();
                }
                n_max *= 2;
            };
            (weights, p_us + 1)
        }
    };
    Ok(NumberSystem {
        kind,
        depth,
        weights,
        gap,
    })
}

impl NumberSystem {
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, plane: usize) -> Option<u64> {
        self.weights.get(plane).copied()
    }

    /// Number of (virtual) bit-planes.
    pub fn planes(&self) -> usize {
        self.weights.len()
    }

    /// Minimal index distance between two set digits.
    pub fn gap(&self) -> usize {
        self.gap
    }

    /// Largest pixel value at this depth.
    pub fn max_value(&self) -> u64 {
        (1u64 << self.depth) - 1
    }

    /// Greedy decomposition: repeatedly take the largest weight that fits.
    pub fn decompose(&self, value: u64) -> Result<Codeword<'_>> {
        let max = self.max_value();
        if value > max {
            return Err(Error::ValueOutOfRange { value, max });
        }
        let mut bits = vec![false; self.planes()];
        let mut rest = value;
        for (i, &w) in self.weights.iter().enumerate().rev() {
            if w <= rest {
                bits[i] = true;
                rest -= w;
            }
        }
        debug_assert_eq!(rest, 0);
        Ok(Codeword { system: self, bits })
    }

    /// `Σ bits[i] · W(i)`. Extra trailing bits beyond `planes()` are ignored.
    pub fn value_of(&self, bits: &[bool]) -> u64 {
        bits.iter()
            .zip(&self.weights)
            .filter(|(b, _)| **b)
            .map(|(_, w)| w)
            .sum()
    }

    pub fn recompose(&self, codeword: &Codeword<'_>) -> u64 {
        self.value_of(&codeword.bits)
    }

    fn gap_ok(&self, bits: &[bool]) -> bool {
        let mut last: Option<usize> = None;
        for (i, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            if let Some(j) = last {
                if i - j < self.gap {
                    return false;
                }
            }
            last = Some(i);
        }
        true
    }

    /// Gap rule holds and the value is a representable pixel.
    pub fn is_valid(&self, bits: &[bool]) -> bool {
        bits.len() == self.planes() && self.gap_ok(bits) && self.value_of(bits) <= self.max_value()
    }

    /// `index,weight` rows.
    pub fn weights_csv(&self) -> String {
        let mut out = String::from("index,weight\n");
        for (i, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("{i},{w}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword<'a> {
    system: &'a NumberSystem,
    bits: Vec<bool>,
}

impl<'a> Codeword<'a> {
    /// Wraps raw digits; no validity check is made.
    pub fn from_bits(system: &'a NumberSystem, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != system.planes() {
            return Err(Error::InvalidRange(format!(
                "codeword has {} digits, system has {} planes",
                bits.len(),
                system.planes()
            )));
        }
        Ok(Self { system, bits })
    }

    pub fn system(&self) -> &'a NumberSystem {
        self.system
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, plane: usize) -> bool {
        self.bits[plane]
    }

    pub fn value(&self) -> u64 {
        self.system.value_of(&self.bits)
    }

    pub fn is_valid(&self) -> bool {
        self.system.is_valid(&self.bits)
    }

    pub fn with_bit(&self, plane: usize, bit: bool) -> Self {
        let mut bits = self.bits.clone();
        bits[plane] = bit;
        Self {
            system: self.system,
            bits,
        }
    }

    pub fn set_planes(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Plane 0 first, grouped in fours: `0100 1000 0000` for 10 in `fib1`.
impl fmt::Display for Codeword<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, chunk) in self.bits.chunks(4).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for &b in chunk {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(p: u32, depth: u32) -> NumberSystem {
        build_system(SystemKind::FibonacciP(p), depth).unwrap()
    }

    fn bits_at(m: usize, set: &[usize]) -> Vec<bool> {
        let mut b = vec![false; m];
        for &i in set {
            b[i] = true;
        }
        b
    }

    #[test]
    fn binary_weights() {
        let s = build_system(SystemKind::Binary, 8).unwrap();
        assert_eq!(s.weights(), &[1, 2, 4, 8, 16, 32, 64, 128]);
        assert_eq!(s.planes(), 8);
    }

    #[test]
    fn zeckendorf_weights() {
        let s = fib(1, 8);
        assert_eq!(s.weights(), &[1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]);
        assert_eq!(s.planes(), 12);
    }

    #[test]
    fn order_two_weights() {
        assert_eq!(&fib(2, 4).weights()[..6], &[1, 2, 3, 4, 6, 9]);
    }

    #[test]
    fn decompose_examples() {
        let s = fib(1, 8);
        let c = s.decompose(10).unwrap();
        assert_eq!(c.set_planes(), vec![1, 4]);
        assert_eq!(c.to_string(), "0100 1000 0000");
        assert_eq!(s.decompose(255).unwrap().set_planes(), vec![0, 6, 11]);
        assert!(s.decompose(0).unwrap().bits().iter().all(|b| !b));
        assert_eq!(
            s.decompose(256),
            Err(Error::ValueOutOfRange {
                value: 256,
                max: 255
            })
        );
    }

    #[test]
    fn binary_recompose() {
        let s = build_system(SystemKind::Binary, 8).unwrap();
        let bits: Vec<bool> = (0..8).map(|i| (0xA5u64 >> i) & 1 == 1).collect();
        let c = Codeword::from_bits(&s, bits).unwrap();
        assert_eq!(c.value(), 165);
        assert_eq!(s.recompose(&c), 165);
        assert!(Codeword::from_bits(&s, vec![true; 3]).is_err());
    }

    #[test]
    fn validity() {
        let s = fib(1, 8);
        assert!(!s.is_valid(&bits_at(12, &[2, 3])));
        assert!(s.is_valid(&bits_at(12, &[1, 3])));
        // 233 + 34 = 267 > 255
        assert!(!s.is_valid(&bits_at(12, &[7, 11])));
        assert!(!s.is_valid(&bits_at(11, &[1])));
        let s2 = fib(2, 8);
        assert!(s2.is_valid(&bits_at(s2.planes(), &[1, 4])));
        assert!(!s2.is_valid(&bits_at(s2.planes(), &[1, 3])));
        let b = build_system(SystemKind::Binary, 8).unwrap();
        assert!(b.is_valid(&[true; 8]));
    }

    #[test]
    fn parse_kind() {
        assert_eq!("binary".parse::<SystemKind>(), Ok(SystemKind::Binary));
        assert_eq!("fib3".parse::<SystemKind>(), Ok(SystemKind::FibonacciP(3)));
        assert_eq!("fib0".parse::<SystemKind>(), Err(Error::ZeroOrder));
        assert!(matches!(
            "fibx".parse::<SystemKind>(),
            Err(Error::UnknownSystem(_))
        ));
        assert_eq!(SystemKind::FibonacciP(12).to_string(), "fib12");
    }

    #[test]
    fn depth_limits() {
        assert_eq!(
            build_system(SystemKind::Binary, 0),
            Err(Error::UnsupportedDepth(0))
        );
        assert_eq!(
            build_system(SystemKind::Binary, 17),
            Err(Error::UnsupportedDepth(17))
        );
        assert_eq!(
            build_system(SystemKind::FibonacciP(0), 8),
            Err(Error::ZeroOrder)
        );
        // Large orders need a long sequence prefix.
        let s = fib(12, 16);
        assert!(*s.weights().last().unwrap() < 1 << 16);
        assert!(s.planes() > 64);
    }

    #[test]
    fn coverage_is_minimal_and_complete() {
        for p in 1..=5 {
            for depth in 1..=12 {
                let s = fib(p, depth);
                for v in 0..=s.max_value() {
                    let c = s.decompose(v).unwrap();
                    assert!(c.is_valid());
                    assert_eq!(c.value(), v);
                }
                // Without the top plane, greedy cannot produce a valid
                // codeword for 2^depth - 1.
                let truncated = &s.weights()[..s.planes() - 1];
                let mut rest = s.max_value();
                let mut taken = Vec::new();
                for (i, &w) in truncated.iter().enumerate().rev() {
                    if w <= rest {
                        rest -= w;
                        taken.push(i);
                    }
                }
                let gap_broken = taken.windows(2).any(|w| w[0] - w[1] < s.gap());
                assert!(rest > 0 || gap_broken, "p={p} depth={depth}");
                assert!(s.planes() >= depth as usize);
                if depth >= 2 {
                    assert!(s.planes() > depth as usize);
                }
            }
        }
    }
}
