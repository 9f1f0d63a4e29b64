//! Square matrices, companion matrices and characteristic polynomials.

use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::Poly;
use crate::Error;

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    dim: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    /// Builds a `dim x dim` matrix from row-major entries.
    ///
    /// Panics if `entries.len() != dim * dim`.
    pub fn from_rows(dim: usize, entries: Vec<E>) -> Self {
        assert_eq!(entries.len(), dim * dim, "matrix must be square");
        Matrix { dim, entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Matrix { dim, entries }
    }

    pub fn scalar<F: Field<Elem = E>>(field: &F, dim: usize, c: &E) -> Self {
        Self::from_fn(dim, |i, j| if i == j { c.clone() } else { field.zero() })
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, dim: usize) -> Self {
        Self::scalar(field, dim, &field.one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.dim + j]
    }

    /// Companion matrix of a monic polynomial in the column convention: ones
    /// on the subdiagonal and `-t_0, ..., -t_{d-1}` down the last column.
    pub fn companion<F: Field<Elem = E>>(field: &F, t: &Poly<E>) -> Result<Self, Error> {
        let d = match t.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if !field.is_one(&t.coeffs()[d]) {
            return Err(Error::NotMonic);
        }
        let cs = t.coeffs();
        Ok(Self::from_fn(d, |i, j| {
            if j == d - 1 {
                field.neg(&cs[i])
            } else if i == j + 1 {
                field.one()
            } else {
                field.zero()
            }
        }))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| field.add(a, b)).collect();
        Matrix { dim: self.dim, entries }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (0..n).fold(field.zero(), |acc, k| {
                let a = self.get(i, k);
                if field.is_trivially_zero(a) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, other.get(k, j)))
                }
            })
        })
    }

    /// `Q(M)` by Horner's rule.
    pub fn eval_poly<F: Field<Elem = E>>(&self, field: &F, q: &Poly<E>) -> Self {
        let zero = Self::scalar(field, self.dim, &field.zero());
        q.coeffs().iter().rev().fold(zero, |acc, c| acc.mul(field, self).add(field, &Self::scalar(field, self.dim, c)))
    }

    /// Characteristic polynomial `det(X*I - M)` by Berkowitz's algorithm.
    ///
    /// Only ring operations are used, so no zero tests are needed in the
    /// coefficient field.
    pub fn char_poly<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        let n = self.dim;
        if n == 0 {
            return Poly::constant(field, field.one());
        }
        // Coefficient vectors run from X^m down to X^0, for the trailing
        // principal submatrix starting at row/column r.
        let mut vector = alloc::vec![field.one(), field.neg(self.get(n - 1, n - 1))];
        for r in (0..n - 1).rev() {
            let m = n - 1 - r;
            let a = self.get(r, r);
            // C, A*C, A^2*C, ... where A is the trailing block below r.
            let mut col: Vec<E> = (r + 1..n).map(|i| self.get(i, r).clone()).collect();
            let mut diags = Vec::with_capacity(m + 2);
            diags.push(field.one());
            diags.push(field.neg(a));
            for step in 0..m {
                let rc = (r + 1..n)
                    .zip(&col)
                    .fold(field.zero(), |acc, (j, c)| field.add(&acc, &field.mul(self.get(r, j), c)));
                diags.push(field.neg(&rc));
                if step + 1 < m {
                    col = (r + 1..n)
                        .map(|i| {
                            (r + 1..n)
                                .zip(&col)
                                .fold(field.zero(), |acc, (j, c)| field.add(&acc, &field.mul(self.get(i, j), c)))
                        })
                        .collect();
                }
            }
            // Lower-triangular Toeplitz matrix with first column `diags`
            // applied to the previous vector.
            vector = (0..m + 2)
                .map(|i| {
                    (0..=i.min(m)).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&diags[i - j], &vector[j])))
                })
                .collect();
        }
        vector.reverse();
        Poly::new(field, vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational, Rationals};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(cs: &[(i64, i64)]) -> Poly<Rational> {
        let cs: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
        Poly::from_rationals(&Rationals, &cs)
    }

    fn m(dim: usize, es: &[(i64, i64)]) -> Matrix<Rational> {
        Matrix::from_rows(dim, es.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// Faddeev-LeVerrier over Q: an independent route to the
    /// characteristic polynomial (divides by integers only).
    fn leverrier(a: &Matrix<Rational>) -> Poly<Rational> {
        let f = Rationals;
        let n = a.dim();
        let mut coeffs = alloc::vec![Rational::zero(); n + 1];
        coeffs[n] = rat(1, 1);
        let mut mk = Matrix::scalar(&f, n, &Rational::zero());
        for k in 1..=n {
            mk = a.mul(&f, &mk).add(&f, &Matrix::scalar(&f, n, &coeffs[n - k + 1]));
            let amk = a.mul(&f, &mk);
            let trace = (0..n).fold(Rational::zero(), |acc, i| acc + amk.get(i, i));
            coeffs[n - k] = -trace / rat(k as i64, 1);
        }
        Poly::new(&f, coeffs)
    }

    fn worked_t() -> Poly<Rational> {
        q(&[(25, 196), (-1, 1), (1, 1)])
    }

    #[test]
    fn companion_examples() {
        let f = Rationals;
        let c = Matrix::companion(&f, &worked_t()).unwrap();
        assert_eq!(c, m(2, &[(0, 1), (-25, 196), (1, 1), (1, 1)]));
        assert_eq!(c.char_poly(&f), worked_t());
        assert_eq!(Matrix::companion(&f, &q(&[(-7, 3), (1, 1)])).unwrap(), m(1, &[(7, 3)]));
        let x2 = q(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(Matrix::companion(&f, &x2).unwrap(), m(2, &[(0, 1), (0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn companion_rejects_bad_input() {
        let f = Rationals;
        assert_eq!(Matrix::companion(&f, &q(&[(1, 1), (2, 1)])), Err(Error::NotMonic));
        assert_eq!(Matrix::companion(&f, &q(&[(1, 1)])), Err(Error::ConstantPolynomial));
        assert_eq!(Matrix::companion(&f, &q(&[])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn char_poly_examples() {
        let f = Rationals;
        let zero2 = Matrix::scalar(&f, 2, &Rational::zero());
        assert_eq!(zero2.char_poly(&f), q(&[(0, 1), (0, 1), (1, 1)]));
        let c = Matrix::companion(&f, &worked_t()).unwrap();
        let c3 = c.mul(&f, &c).mul(&f, &c);
        let expected = q(&[(15625, 7529536), (-121, 196), (1, 1)]);
        assert_eq!(leverrier(&c3), expected);
        assert_eq!(c3.char_poly(&f), expected);
    }

    #[test]
    fn eval_poly_examples() {
        let f = Rationals;
        let c = Matrix::companion(&f, &worked_t()).unwrap();
        assert_eq!(c.eval_poly(&f, &q(&[(0, 1), (1, 1)])), c);
        assert_eq!(c.eval_poly(&f, &q(&[(3, 2)])), Matrix::scalar(&f, 2, &rat(3, 2)));
        // (1 - X) X = X - X^2
        let lhs = c.eval_poly(&f, &q(&[(0, 1), (1, 1), (-1, 1)]));
        let c2 = c.mul(&f, &c);
        let rhs = Matrix::from_fn(2, |i, j| c.get(i, j) - c2.get(i, j));
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #[test]
        fn char_poly_of_companion_roundtrips(cs in proptest::collection::vec((-40i64..40, 1i64..9), 1..7)) {
            let f = Rationals;
            let mut t: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
            t.push(rat(1, 1));
            let t = Poly::new(&f, t);
            let c = Matrix::companion(&f, &t).unwrap();
            prop_assert_eq!(c.char_poly(&f), t);
        }

        #[test]
        fn berkowitz_matches_leverrier(dim in 1usize..5, es in proptest::collection::vec((-9i64..9, 1i64..4), 16)) {
            let entries: Vec<Rational> = es[..dim * dim].iter().map(|&(n, d)| rat(n, d)).collect();
            let a = Matrix::from_rows(dim, entries);
            prop_assert_eq!(a.char_poly(&Rationals), leverrier(&a));
        }
    }
}
