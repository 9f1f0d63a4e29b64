//! Hensel codes, special polynomials, and the transforms that make a root
//! sitting on an isolated slope of a Newton polygon explicit.
//!
//! Chain for a code `(P, a)` with root `alpha`:
//!
//! 1. `P1(X) = P(X + a)` has an isolated edge from `(0, v(P(a)))` to
//!    `(1, 0)`; `s = -p_0/p_1` describes `alpha - a` immediately.
//! 2. `Q(Y) = p_1^0 / p_0^1 * P1(s*Y)` has the Hensel code `(Q, 1)` for the
//!    unit `nu` with `alpha - a = s*nu`.
//! 3. `R(X) = Q(1 + X)`, `S(X) = R(-r_0 X / r_1) / r_0`, `T(X) = X^d S(1/X)`.
//!    `T` is special and `nu = (r_1 beta - r_0) / (r_1 beta)` for its special
//!    zero `beta`, unless `r_0 = 0` and `nu = 1` outright.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::{Field, Rational};
use crate::newton::NewtonPolygon;
use crate::poly::Poly;
use crate::value::Val;
use crate::valued::ValuedField;
use crate::Error;

/// A polynomial over the valuation ring with a simple approximate root:
/// `v(P(a)) > 0` and `v(P'(a)) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselCode<E> {
    poly: Poly<E>,
    point: E,
}

impl<E: Clone> HenselCode<E> {
    pub fn new<F: ValuedField<Elem = E>>(field: &F, poly: Poly<E>, point: E) -> Result<Self, Error> {
        if let Some(i) = poly.coeffs().iter().position(|c| !field.in_valuation_ring(c)) {
            return Err(Error::CoefficientNotIntegral(i));
        }
        if !field.in_valuation_ring(&point) {
            return Err(Error::PointNotIntegral);
        }
        if !field.in_maximal_ideal(&poly.eval(field, &point)) {
            return Err(Error::ValueNotInMaximalIdeal);
        }
        if !field.is_unit(&poly.derivative(field).eval(field, &point)) {
            return Err(Error::DerivativeNotUnit);
        }
        Ok(HenselCode { poly, point })
    }

    pub fn poly(&self) -> &Poly<E> {
        &self.poly
    }

    pub fn point(&self) -> &E {
        &self.point
    }
}

/// `X^d - X^(d-1) + t_(d-2) X^(d-2) + ... + t_0` with every `t_i` in the
/// maximal ideal. Its special zero is the unique root congruent to `1`; all
/// other roots lie in the maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPoly<E>(Poly<E>);

impl<E: Clone> SpecialPoly<E> {
    pub fn new<F: ValuedField<Elem = E>>(field: &F, poly: Poly<E>) -> Result<Self, Error> {
        let d = match poly.degree() {
            None | Some(0) => return Err(Error::NotSpecial("degree must be at least 1".into())),
            Some(d) => d,
        };
        let cs = poly.coeffs();
        if !field.is_one(&cs[d]) {
            return Err(Error::NotSpecial("not monic".into()));
        }
        if !field.is_zero(&field.add(&cs[d - 1], &field.one())) {
            return Err(Error::NotSpecial(format!("coefficient of X^{} is not -1", d - 1)));
        }
        if let Some(i) = cs[..d - 1].iter().position(|c| !field.in_maximal_ideal(c)) {
            return Err(Error::NotSpecial(format!("coefficient of X^{i} is not in the maximal ideal")));
        }
        Ok(SpecialPoly(poly))
    }

    pub fn poly(&self) -> &Poly<E> {
        &self.0
    }

    pub fn into_poly(self) -> Poly<E> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("special polynomials are nonconstant")
    }

    pub(crate) fn map_unchecked<G: Clone>(&self, f: impl FnMut(&E) -> G) -> SpecialPoly<G> {
        SpecialPoly(Poly::from_raw(self.0.coeffs().iter().map(f).collect()))
    }
}

/// `x -> (a x + b) / (c x + d)`, composed as 2x2 matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusForm<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone> MobiusForm<E> {
    pub fn identity<F: Field<Elem = E>>(field: &F) -> Self {
        MobiusForm { a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    /// `x -> scale * x + shift`.
    pub fn affine<F: Field<Elem = E>>(field: &F, scale: E, shift: E) -> Self {
        MobiusForm { a: scale, b: shift, c: field.zero(), d: field.one() }
    }

    /// `self(inner(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, inner: &Self) -> Self {
        let dot = |x: &E, y: &E, z: &E, w: &E| field.add(&field.mul(x, y), &field.mul(z, w));
        MobiusForm {
            a: dot(&self.a, &inner.a, &self.b, &inner.c),
            b: dot(&self.a, &inner.b, &self.b, &inner.d),
            c: dot(&self.c, &inner.a, &self.d, &inner.c),
            d: dot(&self.c, &inner.b, &self.d, &inner.d),
        }
    }

    pub fn determinant<F: Field<Elem = E>>(&self, field: &F) -> E {
        field.sub(&field.mul(&self.a, &self.d), &field.mul(&self.b, &self.c))
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, x: &E) -> Result<E, Error> {
        let num = field.add(&field.mul(&self.a, x), &self.b);
        let den = field.add(&field.mul(&self.c, x), &self.d);
        field.div(&num, &den)
    }
}

impl MobiusForm<Rational> {
    /// Projective representative with coprime integer entries whose first
    /// nonzero entry is positive.
    pub fn normalized(&self) -> Self {
        let entries = [&self.a, &self.b, &self.c, &self.d];
        let lcm = entries.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<num_bigint::BigInt> =
            entries.iter().map(|q| (*q * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, n| acc.gcd(n));
        if g.is_zero() {
            return self.clone();
        }
        if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
            g = -g;
        }
        let r = |n: &num_bigint::BigInt| Rational::from_integer(n / &g);
        MobiusForm { a: r(&ints[0]), b: r(&ints[1]), c: r(&ints[2]), d: r(&ints[3]) }
    }
}

/// Result of specializing a unit-root code `(Q, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialOutcome<E> {
    /// The root is this element of the base field.
    Exact(E),
    /// The root is `mobius(beta)` for the special zero `beta` of `special`.
    Extended { special: SpecialPoly<E>, mobius: MobiusForm<E> },
}

/// Intermediate polynomials of [`specialize_steps`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization<E> {
    /// `R(X) = Q(1 + X)`.
    pub shifted: Poly<E>,
    /// `S(X) = R(-r_0 X / r_1) / r_0`; absent when `r_0 = 0`.
    pub scaled: Option<Poly<E>>,
    pub outcome: SpecialOutcome<E>,
}

/// `P(X + a)` for a code `(P, a)`, together with the valuation of `alpha - a`
/// read off the isolated edge at `k = 0` (`Infinity` when `a` is a root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedCode<E> {
    pub poly: Poly<E>,
    pub root_val: Val,
}

pub fn shift_to_isolated_slope<F: ValuedField>(field: &F, code: &HenselCode<F::Elem>) -> ShiftedCode<F::Elem> {
    let poly = code.poly.shift(field, &code.point);
    // v(P'(a)) = 0, so the edge (0, v(p_0)) -> (1, 0) has root valuation v(p_0).
    let root_val = field.val(&poly.coeff(field, 0));
    ShiftedCode { poly, root_val }
}

fn check_isolated<F: ValuedField>(field: &F, p: &Poly<F::Elem>, k: usize) -> Result<(), Error> {
    NewtonPolygon::of_poly(field, p)?.isolated_at(k).map(|_| ()).ok_or(Error::NotIsolated(k))
}

/// `-p_k / p_(k+1)`, an immediate description of the unique root whose
/// valuation is the root valuation of the isolated edge at `k`.
pub fn immediate_from_isolated_slope<F: ValuedField>(field: &F, p: &Poly<F::Elem>, k: usize) -> Result<F::Elem, Error> {
    check_isolated(field, p, k)?;
    Ok(slope_description(field, p, k))
}

/// [`immediate_from_isolated_slope`] without the polygon check.
pub(crate) fn slope_description<F: Field>(field: &F, p: &Poly<F::Elem>, k: usize) -> F::Elem {
    let num = field.neg(&p.coeff(field, k));
    field.div(&num, &p.coeff(field, k + 1)).expect("the right end of an isolated edge is a nonzero coefficient")
}

/// `Q(Y) = p_(k+1)^k / p_k^(k+1) * P(-p_k/p_(k+1) * Y)`: its root in the
/// units is `nu` with `alpha = (-p_k/p_(k+1)) * nu`.
pub fn unit_factor_polynomial<F: ValuedField>(field: &F, p: &Poly<F::Elem>, k: usize) -> Result<Poly<F::Elem>, Error> {
    check_isolated(field, p, k)?;
    unit_factor_unchecked(field, p, k)
}

fn unit_factor_unchecked<F: Field>(field: &F, p: &Poly<F::Elem>, k: usize) -> Result<Poly<F::Elem>, Error> {
    let pk = p.coeff(field, k);
    let pk1 = p.coeff(field, k + 1);
    if field.is_zero(&pk) {
        return Err(Error::ZeroCoefficient(k));
    }
    let s = field.div(&field.neg(&pk), &pk1)?;
    let factor = field.div(&field.pow(&pk1, k as u32), &field.pow(&pk, k as u32 + 1))?;
    Ok(p.scale_arg(field, &s).scale(field, &factor))
}

pub fn specialize<F: ValuedField>(field: &F, q: &Poly<F::Elem>) -> Result<SpecialOutcome<F::Elem>, Error> {
    specialize_steps(field, q).map(|s| s.outcome)
}

pub fn specialize_steps<F: ValuedField>(field: &F, q: &Poly<F::Elem>) -> Result<Specialization<F::Elem>, Error> {
    HenselCode::new(field, q.clone(), field.one())?;
    let d = q.degree().expect("a Hensel code polynomial is nonconstant");
    let r = q.shift(field, &field.one());
    let r0 = r.coeff(field, 0);
    let r1 = r.coeff(field, 1);
    if field.is_zero(&r0) {
        return Ok(Specialization { shifted: r, scaled: None, outcome: SpecialOutcome::Exact(field.one()) });
    }
    let arg = field.div(&field.neg(&r0), &r1)?;
    let s = r.scale_arg(field, &arg).scale(field, &field.inv(&r0)?);
    let t = s.reverse(field, d)?;
    let special = SpecialPoly::new(field, t)
        .map_err(|e| Error::Invariant(format!("specialization did not produce a special polynomial ({e})")))?;
    let mobius = MobiusForm { a: r1.clone(), b: field.neg(&r0), c: r1, d: field.zero() };
    Ok(Specialization { shifted: r, scaled: Some(s), outcome: SpecialOutcome::Extended { special, mobius } })
}

/// Every step taken to make the root of a Hensel code explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselChain<E> {
    /// `P(X + a)`.
    pub shifted: Poly<E>,
    /// `-p_0/p_1` of the shifted polynomial: an immediate description of
    /// `alpha - a` (zero when `a` is itself the root).
    pub offset: E,
    /// `Q` with the code `(Q, 1)`; absent when `a` is the root.
    pub unit_factor: Option<Poly<E>>,
    pub specialization: Option<Specialization<E>>,
    /// `alpha` itself: explicit, or a Mobius image of a special zero.
    pub root: SpecialOutcome<E>,
}

/// Runs the whole chain for a validated code.
pub fn resolve_code<F: ValuedField>(field: &F, code: &HenselCode<F::Elem>) -> Result<HenselChain<F::Elem>, Error> {
    let ShiftedCode { poly: shifted, .. } = shift_to_isolated_slope(field, code);
    let offset = slope_description(field, &shifted, 0);
    let a = code.point.clone();
    if field.is_zero(&shifted.coeff(field, 0)) {
        return Ok(HenselChain {
            shifted,
            offset,
            unit_factor: None,
            specialization: None,
            root: SpecialOutcome::Exact(a),
        });
    }
    let q = unit_factor_unchecked(field, &shifted, 0)?;
    let spec = specialize_steps(field, &q)?;
    let outer = MobiusForm::affine(field, offset.clone(), a.clone());
    let root = match &spec.outcome {
        SpecialOutcome::Exact(nu) => SpecialOutcome::Exact(field.add(&a, &field.mul(&offset, nu))),
        SpecialOutcome::Extended { special, mobius } => {
            let composed = outer.compose(field, mobius);
            if field.is_zero(&composed.determinant(field)) {
                return Err(Error::Invariant("degenerate Mobius form".into()));
            }
            SpecialOutcome::Extended { special: special.clone(), mobius: composed }
        }
    };
    Ok(HenselChain { shifted, offset, unit_factor: Some(q), specialization: Some(spec), root })
}
