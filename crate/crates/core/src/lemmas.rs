//! Numerical checks of the inequalities satisfied by the roots `α_k`.
//!
//! All checks are certified through each root's bracket; a `false` means the
//! claim failed or could not be decided at the requested tolerance.

use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::Enclosure;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::root::{bracket_cmp, find_alpha, AlphaRoot, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma3Record {
    pub k: u32,
    pub alpha_k: f64,
    pub alpha_next: f64,
    /// `α_k > α_{k+1}`
    pub decreasing: bool,
    /// `α_{k+1} - 1 < α_k - 1` and `(α_k - 1)^2 · k < 1`, which squeezes
    /// `α_k - 1` between `1/(k+1)` and `1/√k`.
    pub limit_proxy: bool,
    /// `α_{k+1} > (1 + α_k) / 2`
    pub midpoint: bool,
    /// `α_k^k < k + 1`
    pub power_below: bool,
    /// `α_k^(k+1) > 2`
    pub power_above: bool,
}

impl Lemma3Record {
    pub fn passes(&self) -> bool {
        self.decreasing && self.limit_proxy && self.midpoint && self.power_below && self.power_above
    }
}

fn roots(count: u32, tolerance: f64) -> Result<Vec<AlphaRoot>> {
    (1..=count).map(|p| find_alpha(p, tolerance)).collect()
}

/// Evaluates the five root claims for every `k` in `1..=k_max`.
pub fn check_lemma3(k_max: u32, tolerance: f64) -> Result<Vec<Lemma3Record>> {
    if k_max < 2 {
        return Err(Error::InvalidRange(format!(
            "k_max = {k_max} must be at least 2"
        )));
    }
    let roots = roots(k_max + 1, tolerance)?;
    let one = Dyadic::one();

    let records = (1..=k_max)
        .map(|k| {
            let cur = &roots[k as usize - 1];
            let next = &roots[k as usize];
            let enc = Enclosure::new(cur);
            let enc_next = Enclosure::new(next);

            let decreasing = bracket_cmp(cur, next) == Some(Ordering::Greater);
            let excess_hi = enc.hi().sub(&one);
            let shrinking = enc_next.hi().sub(&one) < enc.lo().sub(&one);
            let squeeze = excess_hi.mul(&excess_hi).mul(&Dyadic::from_int(k)) < one;
            let midpoint = *enc_next.lo() > one.add(enc.hi()).half();

            Lemma3Record {
                k,
                alpha_k: cur.value,
                alpha_next: next.value,
                decreasing,
                limit_proxy: shrinking && squeeze,
                midpoint,
                power_below: enc.power_below(k, &Dyadic::from_int(k + 1)).holds(),
                power_above: enc.power_above(k + 1, &Dyadic::from_int(2)).holds(),
            }
        })
        .collect();
    Ok(records)
}

/// `(k+1)^(1/k) < k^(1/(k-1))`, checked as `(k+1)^(k-1) < k^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadicalLink {
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `α_k < (k+1)^(1/k)`, checked as `α_k^k < k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootRadical {
    pub k: u32,
    pub alpha: f64,
    pub radical: f64,
    pub holds: bool,
}

/// `α_p^exponent` compared against an integer bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLink {
    pub p: u32,
    pub exponent: u32,
    pub bound: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma4Report {
    pub k_max: u32,
    pub p_max: u32,
    pub radical_chain: Vec<RadicalLink>,
    pub root_below_radical: Vec<RootRadical>,
    /// `α_p^j < j + 1` for `j = 1..=p`.
    pub descending_powers: Vec<PowerLink>,
    /// `α_p^(p+j) > j` for `j = 2..=p+1`.
    pub ascending_powers: Vec<PowerLink>,
}

impl Lemma4Report {
    pub fn passes(&self) -> bool {
        self.radical_chain.iter().all(|l| l.holds)
            && self.root_below_radical.iter().all(|l| l.holds)
            && self.descending_powers.iter().all(|l| l.holds)
            && self.ascending_powers.iter().all(|l| l.holds)
    }
}

pub fn check_lemma4(k_max: u32, p_max: u32) -> Result<Lemma4Report> {
    if k_max < 2 {
        return Err(Error::InvalidRange(format!(
            "k_max = {k_max} must be at least 2"
        )));
    }
    if p_max == 0 {
        return Err(Error::ZeroOrder);
    }
    let roots = roots(k_max.max(p_max), DEFAULT_TOLERANCE)?;

    let radical_chain = (2..=k_max)
        .map(|k| {
            let lhs = num_traits::pow(BigUint::from(k + 1), (k - 1) as usize);
            let rhs = num_traits::pow(BigUint::from(k), k as usize);
            RadicalLink {
                k,
                lower: ((k + 1) as f64).powf(1.0 / k as f64),
                upper: (k as f64).powf(1.0 / (k - 1) as f64),
                holds: lhs < rhs,
            }
        })
        .collect();

    let root_below_radical = (1..=k_max)
        .map(|k| {
            let root = &roots[k as usize - 1];
            RootRadical {
                k,
                alpha: root.value,
                radical: ((k + 1) as f64).powf(1.0 / k as f64),
                holds: Enclosure::new(root)
                    .power_below(k, &Dyadic::from_int(k + 1))
                    .holds(),
            }
        })
        .collect();

    let mut descending_powers = Vec::new();
    let mut ascending_powers = Vec::new();
    for p in 1..=p_max {
        let enc = Enclosure::new(&roots[p as usize - 1]);
        for j in 1..=p {
            descending_powers.push(PowerLink {
                p,
                exponent: j,
                bound: j + 1,
                holds: enc.power_below(j, &Dyadic::from_int(j + 1)).holds(),
            });
        }
        for j in 2..=p + 1 {
            ascending_powers.push(PowerLink {
                p,
                exponent: p + j,
                bound: j,
                holds: enc.power_above(p + j, &Dyadic::from_int(j)).holds(),
            });
        }
    }

    Ok(Lemma4Report {
        k_max,
        p_max,
        radical_chain,
        root_below_radical,
        descending_powers,
        ascending_powers,
    })
}
