//! Exact dyadic rationals `m · 2^e`.
//!
//! Every finite `f64` is a dyadic rational, so the endpoints of a root bracket
//! can be raised to integer powers and compared against big integers with no
//! rounding at all. This is what makes the bound and lemma checks certified.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    /// Exact value of a finite `f64`. Panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic conversion of non-finite {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(m);
        if negative {
            mant = -mant;
        }
        Self { mant, exp: e }.normalized()
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self {
            mant: n.into(),
            exp: 0,
        }
        .normalized()
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self {
            mant: a + b,
            exp: e,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self {
            mant: num_traits::pow(self.mant.clone(), k as usize),
            exp: self.exp * k as i64,
        }
    }

    /// Halve exactly.
    pub fn half(&self) -> Self {
        Self {
            mant: self.mant.clone(),
            exp: self.exp - 1,
        }
        .normalized()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let bits = self.mant.bits() as i64;
        // Keep 64 significant bits; the conversion below then rounds once more.
        let drop = (bits - 64).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(f64::NAN);
        m * pow2(self.exp + drop)
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e < -1022 {
        2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        f64::from_bits(((e + 1023) as u64) << 52)
    }
}

impl From<&BigUint> for Dyadic {
    fn from(n: &BigUint) -> Self {
        Self::from_int(BigInt::from(n.clone()))
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

/// `P(x) = x^(p+1) - x^p - 1`, evaluated exactly.
pub fn poly(p: u32, x: &Dyadic) -> Dyadic {
    let xp = x.pow(p);
    xp.mul(x).sub(&xp).sub(&Dyadic::one())
}

/// `P(x)` at an integer argument.
pub fn poly_at_int(p: u32, x: i64) -> BigInt {
    let x = BigInt::from(x);
    let xp = num_traits::pow(x.clone(), p as usize);
    &xp * &x - &xp - BigInt::one()
}
