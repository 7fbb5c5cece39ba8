//! The positive root `α_p` of `P(x) = x^(p+1) - x^p - 1`.
//!
//! `P(1) = -1` and `P(2) = 2^p - 1 > 0`, so `[1, 2]` is a valid starting
//! bracket for every `p >= 1`. Bisection signs are evaluated exactly on the
//! dyadic midpoint, which keeps the bracket certified all the way down.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::Sign;
use serde::Serialize;

use crate::dyadic::{poly, Dyadic};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaRoot {
    pub p: u32,
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub tolerance: f64,
}

impl AlphaRoot {
    /// `|P(value)|` in floating point.
    pub fn residual(&self) -> f64 {
        poly_f64(self.p, self.value).abs()
    }

    /// Worst-case residual implied by the tolerance: `|P'| <= (p+2) 2^p` on `[1, 2]`.
    pub fn residual_bound(&self) -> f64 {
        (self.p as f64 + 2.0) * 2f64.powi(self.p as i32) * self.tolerance
    }

    pub(crate) fn lo_dyadic(&self) -> Dyadic {
        Dyadic::from_f64(self.bracket_lo)
    }

    pub(crate) fn hi_dyadic(&self) -> Dyadic {
        Dyadic::from_f64(self.bracket_hi)
    }
}

impl fmt::Display for AlphaRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(6);
        write!(f, "{:.*}", prec, self.value)
    }
}

pub(crate) fn check_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    // The spacing of f64 values in [1, 2) is exactly EPSILON.
    if tolerance < f64::EPSILON {
        return Err(Error::ToleranceBelowResolution(tolerance));
    }
    Ok(())
}

pub fn find_alpha(p: u32, tolerance: f64) -> Result<AlphaRoot> {
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    check_tolerance(tolerance)?;

    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > tolerance {
        let mid = lo + (hi - lo) / 2.0;
        match poly(p, &Dyadic::from_f64(mid)).sign() {
            Sign::Minus => lo = mid,
            Sign::Plus => hi = mid,
            // Only reachable if α_p were dyadic.
            Sign::NoSign => {
                lo = mid;
                hi = mid;
            }
        }
    }
    Ok(AlphaRoot {
        p,
        value: lo + (hi - lo) / 2.0,
        bracket_lo: lo,
        bracket_hi: hi,
        tolerance,
    })
}

fn poly_f64(p: u32, x: f64) -> f64 {
    let xp = x.powi(p as i32);
    xp * x - xp - 1.0
}

/// Newton iteration from `x = 2`, where `P` is increasing and convex, so the
/// iterates decrease monotonically onto `α_p`. Used as an independent check
/// on [`find_alpha`].
pub fn newton_alpha(p: u32, tolerance: f64) -> Result<f64> {
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    check_tolerance(tolerance)?;
    let pf = p as f64;
    let mut x = 2.0f64;
    for _ in 0..200 {
        let xm1 = x.powi(p as i32 - 1);
        let fx = xm1 * x * x - xm1 * x - 1.0;
        let dfx = (pf + 1.0) * xm1 * x - pf * xm1;
        let step = fx / dfx;
        x -= step;
        if step.abs() <= tolerance * 0.1 {
            break;
        }
    }
    Ok(x)
}

/// Certified ordering of two roots from their brackets: `Some(Greater)` iff
/// `a`'s bracket lies strictly above `b`'s.
pub fn bracket_cmp(a: &AlphaRoot, b: &AlphaRoot) -> Option<Ordering> {
    if a.bracket_lo > b.bracket_hi {
        Some(Ordering::Greater)
    } else if a.bracket_hi < b.bracket_lo {
        Some(Ordering::Less)
    } else {
        None
    }
}
