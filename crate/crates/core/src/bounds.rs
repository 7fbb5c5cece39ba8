//! Exponential bounds on `F_p(n)`:
//!
//! * `α_p^(n-p) < F_p(n) < α_p^n` for all `n > p`,
//! * `F_p(n) <= 2^(n-p)` for all `n > p`, with equality only at `n = p + 1`
//!   (where `F_p(p+1) = 2`) and strict inequality afterwards.
//!
//! Comparisons against the irrational `α_p` go through [`Enclosure`]: the
//! root's bracket endpoints are raised to the required power exactly, so a
//! verdict is either certified or explicitly [`Verdict::Undecided`].

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::root::{find_alpha, AlphaRoot};
use crate::sequence::generate_sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// Exact equality where strict inequality was asked for.
    Equal,
    Violated,
    /// The root bracket is too wide to decide; tighten the tolerance.
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Equal => "equal",
            Verdict::Violated => "violated",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Combine two verdicts that must both hold.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Holds, Holds) => Holds,
            (Violated, _) | (_, Violated) => Violated,
            (Equal, _) | (_, Equal) => Equal,
            _ => Undecided,
        }
    }
}

/// Exact enclosure `lo <= α <= hi` taken from a root bracket.
#[derive(Debug, Clone)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
}

impl Enclosure {
    pub fn new(root: &AlphaRoot) -> Self {
        Self {
            lo: root.lo_dyadic(),
            hi: root.hi_dyadic(),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    /// Certifies `α^exp < value`.
    pub fn power_below(&self, exp: u32, value: &Dyadic) -> Verdict {
        if self.hi.pow(exp) < *value {
            Verdict::Holds
        } else if self.lo.pow(exp) >= *value {
            Verdict::Violated
        } else {
            Verdict::Undecided
        }
    }

    /// Certifies `α^exp > value`.
    pub fn power_above(&self, exp: u32, value: &Dyadic) -> Verdict {
        if self.lo.pow(exp) > *value {
            Verdict::Holds
        } else if self.hi.pow(exp) <= *value {
            Verdict::Violated
        } else {
            Verdict::Undecided
        }
    }
}

/// `x^k` by repeated multiplication, so printed tables do not depend on the
/// platform's `powi`.
pub(crate) fn pow_f64(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, _| acc * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `α_p^(n-p) < F_p(n)`
    Lower,
    /// `F_p(n) < α_p^n`
    Upper,
    /// `F_p(n) < 2^(n-p)`
    Loose,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub lower: f64,
    #[serde(serialize_with = "crate::serde_big::serialize")]
    pub value: BigUint,
    pub upper: f64,
    #[serde(serialize_with = "crate::serde_big::serialize")]
    pub loose_upper: BigUint,
    pub lower_verdict: Verdict,
    pub upper_verdict: Verdict,
    pub loose_verdict: Verdict,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub n: usize,
    pub bound: BoundKind,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub p: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub alpha: AlphaRoot,
    pub rows: Vec<BoundRow>,
    /// Certified failures, plus equalities anywhere other than `n = p + 1`.
    pub violations: Vec<BoundViolation>,
    /// Comparisons the root bracket could not settle.
    pub undecided: Vec<BoundViolation>,
    /// Indices where `F_p(n) = 2^(n-p)` exactly (only `n = p + 1` is expected).
    pub boundary_equalities: Vec<usize>,
}

impl BoundReport {
    pub fn is_verified(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }

    /// CSV with header `p,n,lower,F,upper,loose_upper,ok`.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("p,n,lower,F,upper,loose_upper,ok\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.*},{},{:.*},{},{}",
                self.p, r.n, precision, r.lower, r.value, precision, r.upper, r.loose_upper, r.ok
            );
        }
        out
    }
}

pub fn verify_bounds(p: u32, n_max: usize, tolerance: f64) -> Result<BoundReport> {
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    let first = p as usize + 1;
    if n_max < first {
        return Err(Error::InvalidRange(format!(
            "n_max = {n_max} must exceed p = {p}"
        )));
    }
    let alpha = find_alpha(p, tolerance)?;
    let seq = generate_sequence(p, n_max)?;
    let enc = Enclosure::new(&alpha);

    let mut rows = Vec::with_capacity(n_max + 1 - first);
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    let mut boundary_equalities = Vec::new();

    for n in first..=n_max {
        let value = seq.terms()[n].clone();
        let exact = Dyadic::from(&value);
        let shift = (n - p as usize) as u32;
        let lower_verdict = enc.power_below(shift, &exact);
        let upper_verdict = enc.power_above(n as u32, &exact);
        let loose_upper = BigUint::one() << shift as usize;
        let loose_verdict = match value.cmp(&loose_upper) {
            std::cmp::Ordering::Less => Verdict::Holds,
            std::cmp::Ordering::Equal => Verdict::Equal,
            std::cmp::Ordering::Greater => Verdict::Violated,
        };

        if loose_verdict == Verdict::Equal {
            boundary_equalities.push(n);
        }
        let loose_ok = loose_verdict.holds() || (loose_verdict == Verdict::Equal && n == first);
        for (bound, verdict, ok) in [
            (BoundKind::Lower, lower_verdict, lower_verdict.holds()),
            (BoundKind::Upper, upper_verdict, upper_verdict.holds()),
            (BoundKind::Loose, loose_verdict, loose_ok),
        ] {
            if ok {
                continue;
            }
            let v = BoundViolation { n, bound, verdict };
            if verdict == Verdict::Undecided {
                undecided.push(v);
            } else {
                violations.push(v);
            }
        }

        rows.push(BoundRow {
            n,
            lower: pow_f64(alpha.value, shift),
            value,
            upper: pow_f64(alpha.value, n as u32),
            loose_upper,
            lower_verdict,
            upper_verdict,
            loose_verdict,
            ok: lower_verdict.holds() && upper_verdict.holds() && loose_ok,
        });
    }

    Ok(BoundReport {
        p,
        n_min: first,
        n_max,
        alpha,
        rows,
        violations,
        undecided,
        boundary_equalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::DEFAULT_TOLERANCE;

    #[test]
    fn classical_at_ten() {
        let rep = verify_bounds(1, 10, DEFAULT_TOLERANCE).unwrap();
        let row = rep.rows.iter().find(|r| r.n == 10).unwrap();
        assert_eq!(row.value, BigUint::from(89u32));
        // φ^9 = 76.0131..., φ^10 = 122.9918...
        assert!((row.lower - 76.013).abs() < 1e-3);
        assert!((row.upper - 122.992).abs() < 1e-3);
        assert!(row.ok);
    }

    #[test]
    fn loose_bound_order_two() {
        let rep = verify_bounds(2, 8, DEFAULT_TOLERANCE).unwrap();
        let row = rep.rows.last().unwrap();
        assert_eq!(row.n, 8);
        assert_eq!(row.value, BigUint::from(13u32));
        assert_eq!(row.loose_upper, BigUint::from(64u32));
        assert_eq!(row.loose_verdict, Verdict::Holds);
    }

    #[test]
    fn first_applicable_index() {
        let rep = verify_bounds(1, 2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(rep.rows.len(), 1);
        let row = &rep.rows[0];
        assert_eq!(row.n, 2);
        assert_eq!(row.value, BigUint::from(2u32));
        assert!(row.lower_verdict.holds() && row.upper_verdict.holds());
        // F_p(p+1) = 2 = 2^1 exactly.
        assert_eq!(row.loose_verdict, Verdict::Equal);
        assert!(row.ok);
        assert_eq!(rep.boundary_equalities, vec![2]);
        assert!(rep.is_verified());
    }

    #[test]
    fn preconditions() {
        assert_eq!(verify_bounds(0, 10, 1e-9).unwrap_err(), Error::ZeroOrder);
        assert!(matches!(
            verify_bounds(3, 3, 1e-9),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            verify_bounds(3, 9, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn coarse_bracket_is_reported_not_dropped() {
        // A bracket of width ~0.06 cannot separate α^n from F(n) for large n.
        let rep = verify_bounds(1, 120, 0.1).unwrap();
        assert!(!rep.undecided.is_empty());
        assert!(rep.violations.is_empty());
        assert!(!rep.is_verified());
    }

    #[test]
    fn enclosure_detects_false_claims() {
        let root = find_alpha(1, DEFAULT_TOLERANCE).unwrap();
        let enc = Enclosure::new(&root);
        // φ^2 = 2.618...: definitely not below 2, definitely above 2.
        assert_eq!(enc.power_below(2, &Dyadic::from_int(2)), Verdict::Violated);
        assert_eq!(enc.power_above(2, &Dyadic::from_int(2)), Verdict::Holds);
        assert_eq!(enc.power_above(2, &Dyadic::from_int(3)), Verdict::Violated);
    }

    #[test]
    fn csv_format() {
        let csv = verify_bounds(2, 4, DEFAULT_TOLERANCE).unwrap().to_csv(6);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("p,n,lower,F,upper,loose_upper,ok"));
        assert_eq!(lines.next(), Some("2,3,1.465571,2,3.147899,2,true"));
    }
}
