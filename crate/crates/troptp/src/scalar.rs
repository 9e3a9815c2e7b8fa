//! Scalars of the max-plus semiring: `ℝ ∪ {−∞}` with `a ⊕ b = max(a, b)` and
//! `a ⊙ b = a + b`.
//!
//! Finite values are exact rationals, so strict-vs-weak inequality
//! distinctions survive every computation. No floating point is used in core
//! arithmetic; a float ingestion path (decimal parsing) converts exactly at
//! the boundary.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::BigRational;
use num::{One, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An element of the max-plus semiring: a finite rational or `−∞`.
///
/// `−∞` is the tropical zero (neutral for `⊕`, absorbing for `⊙`);
/// the rational `0` is the tropical unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropValue {
    NegInf,
    Finite(Rat),
}

impl TropValue {
    pub fn finite(r: Rat) -> Self {
        TropValue::Finite(r)
    }

    /// The tropical unit, the rational `0`.
    pub fn unit() -> Self {
        TropValue::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropValue::Finite(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            TropValue::Finite(r) => Some(r),
            TropValue::NegInf => None,
        }
    }

    /// Tropical addition `⊕`: the maximum.
    pub fn plus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication `⊙`: ordinary addition, with `−∞` absorbing.
    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::NegInf,
        }
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::NegInf, TropValue::NegInf) => Ordering::Equal,
            (TropValue::NegInf, TropValue::Finite(_)) => Ordering::Less,
            (TropValue::Finite(_), TropValue::NegInf) => Ordering::Greater,
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl From<i64> for TropValue {
    fn from(n: i64) -> Self {
        TropValue::Finite(rat(n))
    }
}

impl From<Rat> for TropValue {
    fn from(r: Rat) -> Self {
        TropValue::Finite(r)
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::NegInf => write!(f, "-inf"),
            TropValue::Finite(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}
