//! Field handles.
//!
//! Elements are plain values; all arithmetic goes through a handle
//! implementing [`Field`]. This lets extension fields, whose arithmetic
//! depends on the defining polynomial of every level below, share the
//! polynomial and matrix code with `Q`.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// Exact arbitrary-precision rational, kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact arithmetic in a field of characteristic zero.
#[allow(clippy::wrong_self_convention)]
pub trait Field {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of a rational under the canonical embedding `Q -> K`.
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;

    /// Decides `a = 0`. May be expensive in extension fields.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Cheap, sound but possibly incomplete zero check: `true` only if `a`
    /// is zero. Used to trim polynomial coefficient lists without running a
    /// full zero test.
    fn is_trivially_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }
}

/// The field `Q` without any valuation attached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational, Error> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let q = rat(10, -4);
        assert_eq!(q.numer(), &BigInt::from(-5));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn pow_by_squaring() {
        let f = Rationals;
        assert_eq!(f.pow(&rat(25, 196), 3), rat(15625, 7529536));
        assert_eq!(f.pow(&rat(3, 1), 0), rat(1, 1));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Rationals.inv(&rat(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(Rationals.div(&rat(1, 2), &rat(1, 4)), Ok(rat(2, 1)));
    }
}
