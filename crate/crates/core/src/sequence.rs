//! Fibonacci-p sequences `F_p(0..=p) = 1`, `F_p(n) = F_p(n-1) + F_p(n-p-1)`,
//! and the ratio sequence `β_n = F_p(n+1) / F_p(n)`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Terms `F_p(0..=n_max)` in arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSequence {
    p: u32,
    terms: Vec<BigUint>,
}

pub fn generate_sequence(p: u32, n_max: usize) -> Result<PSequence> {
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    let lag = p as usize + 1;
    let mut terms: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let t = if n < lag {
            BigUint::one()
        } else {
            &terms[n - 1] + &terms[n - lag]
        };
        terms.push(t);
    }
    Ok(PSequence { p, terms })
}

impl PSequence {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n_max(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> Option<&BigUint> {
        self.terms.get(n)
    }

    /// `β_n` rounded to the nearest `f64`. Requires `n < n_max`.
    pub fn beta(&self, n: usize) -> f64 {
        let r = BigRational::new(
            BigInt::from(self.terms[n + 1].clone()),
            BigInt::from(self.terms[n].clone()),
        );
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact comparison of `β_i` against `β_j`.
    pub fn ratio_cmp(&self, i: usize, j: usize) -> Ordering {
        let t = &self.terms;
        (&t[i + 1] * &t[j]).cmp(&(&t[j + 1] * &t[i]))
    }

    /// Whether `1 < β_n < 2` holds exactly for every `p < n < n_max`.
    pub fn ratios_strictly_inside(&self) -> bool {
        let t = &self.terms;
        (self.p as usize + 1..self.n_max()).all(|n| t[n + 1] > t[n] && t[n + 1] < &t[n] * 2u32)
    }

    /// Exact monotonicity of the interleaved subsequences `β_{2n}` and `β_{2n+1}`.
    pub fn interleaving(&self) -> Interleaving {
        let last = self.n_max(); // betas are indexed 0..last
        let even_increasing = (0..)
            .map(|k| 2 * k)
            .take_while(|&i| i + 2 < last)
            .all(|i| self.ratio_cmp(i + 2, i) == Ordering::Greater);
        let odd_decreasing = (0..)
            .map(|k| 2 * k + 1)
            .take_while(|&i| i + 2 < last)
            .all(|i| self.ratio_cmp(i + 2, i) == Ordering::Less);
        Interleaving {
            even_increasing,
            odd_decreasing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interleaving {
    pub even_increasing: bool,
    pub odd_decreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSequence {
    pub p: u32,
    pub betas: Vec<f64>,
}

/// `β_0 ..= β_{n_max-1}`. `β_0..β_{p-1}` are 1 and `β_p` is 2.
pub fn ratio_sequence(p: u32, n_max: usize) -> Result<RatioSequence> {
    let seq = generate_sequence(p, n_max)?;
    Ok(RatioSequence::from_sequence(&seq))
}

impl RatioSequence {
    pub fn from_sequence(seq: &PSequence) -> Self {
        Self {
            p: seq.p(),
            betas: (0..seq.n_max()).map(|n| seq.beta(n)).collect(),
        }
    }

    pub fn last(&self) -> Option<f64> {
        self.betas.last().copied()
    }

    /// First `n` with `|β_n - target| < eps`.
    pub fn first_within(&self, target: f64, eps: f64) -> Option<usize> {
        self.betas.iter().position(|b| (b - target).abs() < eps)
    }

    /// CSV with header `p,n,beta,alpha,abs_err`.
    pub fn to_csv(&self, alpha: f64, precision: usize) -> String {
        let mut out = String::from("p,n,beta,alpha,abs_err\n");
        for (n, b) in self.betas.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{:.*},{:.*},{:.*e}",
                self.p,
                n,
                precision,
                b,
                precision,
                alpha,
                precision,
                (b - alpha).abs()
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seq: &PSequence) -> Vec<u64> {
        seq.terms().iter().map(|t| t.to_u64().unwrap()).collect()
    }

    #[test]
    fn classical_fibonacci() {
        assert_eq!(small(&generate_sequence(1, 5).unwrap()), [1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn leading_ones() {
        assert_eq!(small(&generate_sequence(3, 3).unwrap()), [1, 1, 1, 1]);
    }

    #[test]
    fn order_two_by_hand() {
        // 1,1,1 then 1+1, 2+1, 3+1, 4+2, 6+3, 9+4
        assert_eq!(
            small(&generate_sequence(2, 8).unwrap()),
            [1, 1, 1, 2, 3, 4, 6, 9, 13]
        );
    }

    #[test]
    fn rejects_zero_order() {
        assert_eq!(generate_sequence(0, 10), Err(Error::ZeroOrder));
        assert!(ratio_sequence(0, 10).is_err());
    }

    #[test]
    fn no_overflow_past_u64() {
        let seq = generate_sequence(1, 200).unwrap();
        assert!(seq.term(92).unwrap().to_u64().is_some());
        assert!(seq.term(93).unwrap().to_u64().is_none());
        assert_eq!(
            seq.term(100).unwrap().to_string(),
            "573147844013817084101" // Fib(101)
        );
    }

    #[test]
    fn leading_ratios() {
        // β_0..β_{p-1} = 1 and β_p = F_p(p+1)/F_p(p) = 2.
        assert_eq!(ratio_sequence(2, 2).unwrap().betas, vec![1.0, 1.0]);
        assert_eq!(ratio_sequence(2, 3).unwrap().betas, vec![1.0, 1.0, 2.0]);
        let r = ratio_sequence(4, 10).unwrap();
        assert_eq!(&r.betas[..4], &[1.0; 4]);
        assert_eq!(r.betas[4], 2.0);
        assert!(r.betas[5..].iter().all(|&b| 1.0 < b && b < 2.0));
        assert!(ratio_sequence(3, 0).unwrap().betas.is_empty());
    }

    #[test]
    fn classical_ratio_limit() {
        let r = ratio_sequence(1, 40).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.betas[39] - phi).abs() < 1e-9);
        assert!((r.last().unwrap() - 1.618034).abs() < 1e-6);
    }

    #[test]
    fn classical_interleaving() {
        let seq = generate_sequence(1, 300).unwrap();
        let il = seq.interleaving();
        assert!(il.even_increasing && il.odd_decreasing);
        assert!(seq.ratios_strictly_inside());
    }

    #[test]
    fn csv_header() {
        let csv = ratio_sequence(1, 3).unwrap().to_csv(1.618034, 6);
        assert!(csv.starts_with("p,n,beta,alpha,abs_err\n1,0,1.000000,1.618034,"));
        assert_eq!(csv.lines().count(), 4);
    }
}
