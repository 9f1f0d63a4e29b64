//! Dense univariate polynomials over a [`Field`] handle.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};
use crate::Error;

/// Dense polynomial; `coeffs[i]` is the coefficient of `X^i`.
///
/// The top coefficient is never *trivially* zero (see
/// [`Field::is_trivially_zero`]). Over `Q` that makes it nonzero, so
/// [`Poly::degree`] is the true degree; over extension fields it is a formal
/// degree, an upper bound of the true one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_trivially_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Wraps a coefficient list as-is; the caller keeps the trimming
    /// invariant.
    pub(crate) fn from_raw(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn from_rationals<F: Field<Elem = E>>(field: &F, coeffs: &[Rational]) -> Self {
        Self::new(field, coeffs.iter().map(|q| field.from_rational(q)).collect())
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(field, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_trivially_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| field.mul(&field.from_int(i as i64), c)).collect();
        Self::new(field, coeffs)
    }

    /// `P(X + c)`.
    pub fn shift<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let linear = Self::new(field, vec![c.clone(), field.one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(field, &linear).add(field, &Self::constant(field, a.clone())))
    }

    /// `P(sX)`.
    pub fn scale_arg<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        let mut power = field.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(field.mul(c, &power));
            power = field.mul(&power, s);
        }
        Self::new(field, coeffs)
    }

    /// `X^d P(1/X)`: the coefficient of `X^i` moves to `X^(d - i)`.
    pub fn reverse<F: Field<Elem = E>>(&self, field: &F, d: usize) -> Result<Self, Error> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(Error::ReverseTooShort { degree: deg, requested: d });
            }
        }
        let coeffs = (0..=d).map(|i| self.coeff(field, d - i)).collect();
        Ok(Self::new(field, coeffs))
    }

    /// Remainder of the division by `modulus`, whose leading coefficient is
    /// taken to be `1` (the caller guarantees it is monic).
    pub fn rem_monic<F: Field<Elem = E>>(&self, field: &F, modulus: &Self) -> Self {
        self.div_rem_monic(field, modulus).1
    }

    /// Quotient and remainder of the division by a monic `modulus`.
    pub fn div_rem_monic<F: Field<Elem = E>>(&self, field: &F, modulus: &Self) -> (Self, Self) {
        let d = match modulus.degree() {
            Some(d) => d,
            None => panic!("division by the zero polynomial"),
        };
        if self.coeffs.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = rem[top].clone();
            if field.is_trivially_zero(&lead) {
                continue;
            }
            for (j, m) in modulus.coeffs[..d].iter().enumerate() {
                let idx = top - d + j;
                rem[idx] = field.sub(&rem[idx], &field.mul(&lead, m));
            }
            quot[top - d] = lead;
        }
        rem.truncate(d);
        (Self::new(field, quot), Self::new(field, rem))
    }

    pub fn map<G, F2: Field<Elem = G>>(&self, field: &F2, f: impl FnMut(&E) -> G) -> Poly<G>
    where
        G: Clone,
    {
        Poly::new(field, self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for Poly<Rational> {
    /// Renders as e.g. `X^2 - X + 25/196` or `-(5/4)*X^2 - X + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            if i == 1 {
                f.write_str("X")?;
            } else {
                write!(f, "X^{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(cs: &[(i64, i64)]) -> Poly<Rational> {
        let cs: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
        Poly::from_rationals(&Rationals, &cs)
    }

    #[test]
    fn shift_examples() {
        let f = Rationals;
        // (X^2 - 6)(X + 1) expansion
        assert_eq!(q(&[(-6, 1), (0, 1), (1, 1)]).shift(&f, &rat(1, 1)), q(&[(-5, 1), (2, 1), (1, 1)]));
        let p = q(&[(3, 7), (-2, 1), (0, 1), (5, 4)]);
        assert_eq!(p.shift(&f, &rat(0, 1)), p);
        assert_eq!(q(&[(0, 1), (1, 1)]).shift(&f, &rat(-1, 1)), q(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn scale_arg_examples() {
        let f = Rationals;
        let p = q(&[(-5, 1), (2, 1), (1, 1)]);
        assert_eq!(p.scale_arg(&f, &rat(5, 2)), q(&[(-5, 1), (5, 1), (25, 4)]));
        assert_eq!(p.scale_arg(&f, &rat(1, 1)), p);
        let at_zero = p.scale_arg(&f, &rat(0, 1));
        assert_eq!(at_zero, q(&[(-5, 1)]));
        assert_eq!(at_zero.degree(), Some(0));
    }

    #[test]
    fn reverse_examples() {
        let f = Rationals;
        let s = q(&[(1, 1), (-1, 1), (25, 196)]);
        assert_eq!(s.reverse(&f, 2).unwrap(), q(&[(25, 196), (-1, 1), (1, 1)]));
        // aX + b -> bX + a
        assert_eq!(q(&[(3, 1), (7, 1)]).reverse(&f, 1).unwrap(), q(&[(7, 1), (3, 1)]));
        assert_eq!(q(&[(0, 1), (1, 1)]).reverse(&f, 1).unwrap(), q(&[(1, 1)]));
        assert_eq!(s.reverse(&f, 1), Err(Error::ReverseTooShort { degree: 2, requested: 1 }));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = q(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(q(&[(0, 1)]).is_zero());
        assert_eq!(q(&[(1, 1), (-1, 1)]).add(&Rationals, &q(&[(0, 1), (1, 1)])), q(&[(1, 1)]));
    }

    #[test]
    fn remainder_mod_monic() {
        let f = Rationals;
        let t = q(&[(25, 196), (-1, 1), (1, 1)]);
        let x3 = Poly::monomial(&f, rat(1, 1), 3);
        // X^3 = (1 - 25/196) X - 25/196 mod T
        assert_eq!(x3.rem_monic(&f, &t), q(&[(-25, 196), (171, 196)]));
        assert!(t.rem_monic(&f, &t).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let f = Rationals;
        let p = q(&[(-6, 1), (0, 1), (1, 1)]);
        assert_eq!(p.derivative(&f), q(&[(0, 1), (2, 1)]));
        assert_eq!(p.eval(&f, &rat(1, 1)), rat(-5, 1));
    }

    #[test]
    fn display() {
        assert_eq!(q(&[(25, 196), (-1, 1), (1, 1)]).to_string(), "X^2 - X + 25/196");
        assert_eq!(q(&[(1, 1), (-1, 1), (-5, 4)]).to_string(), "-(5/4)*X^2 - X + 1");
        assert_eq!(q(&[]).to_string(), "0");
        assert_eq!(q(&[(0, 1), (3, 1)]).to_string(), "3*X");
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Rational>> {
        proptest::collection::vec((-30i64..30, 1i64..8), 0..7).prop_map(|cs| q(&cs))
    }

    proptest! {
        #[test]
        fn shift_inverts(p in arb_poly(), n in -9i64..9, d in 1i64..5) {
            let f = Rationals;
            let a = rat(n, d);
            prop_assert_eq!(p.shift(&f, &a).shift(&f, &(-a)), p);
        }

        #[test]
        fn scale_arg_inverts(p in arb_poly(), n in 1i64..9, d in 1i64..5, neg in any::<bool>()) {
            let f = Rationals;
            let s = if neg { -rat(n, d) } else { rat(n, d) };
            prop_assert_eq!(p.scale_arg(&f, &s).scale_arg(&f, &s.recip()), p);
        }

        #[test]
        fn reverse_involution(p in arb_poly(), extra in 0usize..3) {
            let f = Rationals;
            prop_assume!(!p.is_zero() && !p.coeffs()[0].is_zero());
            let d = p.degree().unwrap() + extra;
            prop_assert_eq!(p.reverse(&f, d).unwrap().reverse(&f, d).unwrap(), p);
        }

        #[test]
        fn shift_agrees_with_evaluation(p in arb_poly(), c in -5i64..5, x in -5i64..5) {
            let f = Rationals;
            let (c, x) = (rat(c, 1), rat(x, 1));
            prop_assert_eq!(p.shift(&f, &c).eval(&f, &x), p.eval(&f, &(&x + &c)));
        }

        #[test]
        fn division_identity(p in arb_poly(), m in arb_poly()) {
            let f = Rationals;
            prop_assume!(m.degree().is_some_and(|d| d > 0));
            let lead = m.leading().unwrap().recip();
            let m = m.scale(&f, &lead);
            let (quot, rem) = p.div_rem_monic(&f, &m);
            prop_assert!(rem.degree().is_none_or(|r| r < m.degree().unwrap()));
            prop_assert_eq!(quot.mul(&f, &m).add(&f, &rem), p);
        }
    }
}
