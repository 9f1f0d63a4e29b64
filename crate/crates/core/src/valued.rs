//! Valued fields: the interface every algorithm is uniform in, and the base
//! instance `Q` with the p-adic valuation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, Rational};
use crate::value::Val;
use crate::Error;

/// A field with exact arithmetic and the valuation predicates.
///
/// Implementations must keep `is_zero(x) <=> val(x) == Infinity`, and `val`
/// must be a valuation: `val(xy) = val(x) + val(y)` and
/// `val(x + y) >= min(val(x), val(y))`.
pub trait ValuedField: Field {
    fn val(&self, x: &Self::Elem) -> Val;

    /// `v(x) >= v(y)`.
    fn val_ge(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.val(x) >= self.val(y)
    }

    /// `x` is congruent to 1 modulo the maximal ideal.
    fn residue_is_one(&self, x: &Self::Elem) -> bool {
        self.val(&self.sub(x, &self.one())) > Val::zero()
    }

    fn in_valuation_ring(&self, x: &Self::Elem) -> bool {
        self.val(x) >= Val::zero()
    }

    fn in_maximal_ideal(&self, x: &Self::Elem) -> bool {
        self.val(x) > Val::zero()
    }

    fn is_unit(&self, x: &Self::Elem) -> bool {
        self.val(x) == Val::zero()
    }
}

/// How the primality of `p` was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    /// Trial division up to `sqrt(p)`; used for `p <= TRIAL_DIVISION_LIMIT`.
    TrialDivision,
    /// Miller-Rabin over the first twelve prime bases. Flagged so front ends
    /// can say the check was not by exhaustive division.
    MillerRabin,
}

/// Largest `p` checked by trial division.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

pub fn check_prime(p: u64) -> Option<Primality> {
    if p < 2 {
        return None;
    }
    if p <= TRIAL_DIVISION_LIMIT {
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return None;
            }
            d += 1;
        }
        return Some(Primality::TrialDivision);
    }
    miller_rabin(p).then_some(Primality::MillerRabin)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if BASES.contains(&n) {
        return true;
    }
    if BASES.iter().any(|b| n.is_multiple_of(*b)) {
        return false;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// p-adic valuation of a rational; `Infinity` for `0`.
pub fn padic_val(x: &Rational, p: &BigInt) -> Val {
    if x.is_zero() {
        return Val::Infinity;
    }
    Val::int(int_val(x.numer(), p) - int_val(x.denom(), p))
}

/// `Q` with the p-adic valuation `v_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicRationals {
    p: u64,
    prime: BigInt,
    primality: Primality,
}

impl PAdicRationals {
    pub fn new(p: u64) -> Result<Self, Error> {
        let primality = check_prime(p).ok_or(Error::NotPrime(p))?;
        Ok(PAdicRationals { p, prime: BigInt::from(p), primality })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn primality(&self) -> Primality {
        self.primality
    }
}

impl Field for PAdicRationals {
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

impl ValuedField for PAdicRationals {
    fn val(&self, x: &Rational) -> Val {
        padic_val(x, &self.prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn padic_val_examples() {
        let five = BigInt::from(5);
        assert_eq!(padic_val(&rat(25, 196), &five), Val::int(2));
        assert_eq!(padic_val(&rat(0, 1), &five), Val::Infinity);
        assert_eq!(padic_val(&rat(-7, 2), &five), Val::int(0));
        assert_eq!(padic_val(&rat(3, 250), &five), Val::int(-3));
    }

    #[test]
    fn val_ge_examples() {
        let f = PAdicRationals::new(2).unwrap();
        assert!(f.val_ge(&rat(4, 1), &rat(10, 1)));
        assert!(!f.val_ge(&rat(10, 1), &rat(4, 1)));
        assert!(f.val_ge(&rat(0, 1), &rat(3, 7)));
        assert!(f.val_ge(&rat(0, 1), &rat(0, 1)));
    }

    #[test]
    fn primality() {
        assert_eq!(PAdicRationals::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PAdicRationals::new(15), Err(Error::NotPrime(15)));
        assert_eq!(check_prime(2), Some(Primality::TrialDivision));
        assert_eq!(check_prime(1_000_000_007), Some(Primality::TrialDivision));
        // 2^61 - 1 is prime, beyond the trial division cap.
        assert_eq!(check_prime((1 << 61) - 1), Some(Primality::MillerRabin));
        assert_eq!(check_prime(((1u64 << 31) - 1) * ((1 << 31) + 11)), None);
        // strong pseudoprime to bases 2, 3, 5, 7, 11, 13, 17 (beyond the cap)
        assert_eq!(check_prime(341_550_071_728_321), None);
    }

    #[test]
    fn residue_is_one() {
        let f = PAdicRationals::new(5).unwrap();
        assert!(f.residue_is_one(&rat(121, 196)));
        assert!(f.residue_is_one(&rat(6, 1)));
        assert!(!f.residue_is_one(&rat(2, 1)));
        assert!(!f.residue_is_one(&rat(1, 5)));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn ultrametric(x in arb_rat(), y in arb_rat(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let f = PAdicRationals::new(p).unwrap();
            let (vx, vy) = (f.val(&x), f.val(&y));
            let sum = f.val(&(&x + &y));
            prop_assert!(sum >= vx.clone().min(vy.clone()));
            if vx != vy {
                prop_assert_eq!(sum, vx.clone().min(vy.clone()));
            }
            prop_assert_eq!(f.val(&(&x * &y)), vx.add(&vy));
            prop_assert_eq!(f.is_zero(&x), vx == Val::Infinity);
            if !x.is_zero() {
                prop_assert!(vx.is_integral());
            }
        }

        #[test]
        fn residue_test_matches_definition(x in arb_rat()) {
            let f = PAdicRationals::new(3).unwrap();
            let direct = padic_val(&(&x - Rational::one()), &BigInt::from(3)) > Val::zero();
            prop_assert_eq!(f.residue_is_one(&x), direct);
        }
    }
}
