//! The value group `Z`, its divisible closure `Q`, and the adjoined infinity.

use core::fmt;

use num_traits::{Signed, Zero};

use crate::field::Rational;

/// A valuation value: an element of the divisible closure of the value
/// group, or `Infinity` (the value of `0`).
///
/// The derived order puts every `Finite` below `Infinity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(Rational),
    Infinity,
}

/// Scaling infinity by a non-positive rational has no meaning.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("infinity can only be scaled by a positive rational")]
pub struct NonPositiveScale;

impl Val {
    pub fn zero() -> Self {
        Val::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        Val::Finite(Rational::from_integer(n.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Val::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Val::Finite(q) => Some(q),
            Val::Infinity => None,
        }
    }

    /// `true` for finite values lying in the value group `Z` itself.
    pub fn is_integral(&self) -> bool {
        matches!(self, Val::Finite(q) if q.is_integer())
    }

    /// Group law with `Infinity` absorbing.
    pub fn add(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }

    /// Difference of two finite values. `None` if either side is infinite.
    pub fn checked_sub(&self, other: &Val) -> Option<Rational> {
        Some(self.finite()? - other.finite()?)
    }

    pub fn scale(&self, m: &Rational) -> Result<Val, NonPositiveScale> {
        match self {
            Val::Finite(q) => Ok(Val::Finite(q * m)),
            Val::Infinity if m.is_positive() => Ok(Val::Infinity),
            Val::Infinity => Err(NonPositiveScale),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Val::Finite(q) => q.is_positive(),
            Val::Infinity => true,
        }
    }
}

impl From<Rational> for Val {
    fn from(q: Rational) -> Self {
        Val::Finite(q)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(q) => write!(f, "{q}"),
            Val::Infinity => f.write_str("∞"),
        }
    }
}
