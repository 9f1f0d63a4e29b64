//! Zero test, valuation and immediate description of `Q(beta)`, where
//! `beta` is the special zero of a special polynomial `T` over `K`.
//!
//! Let `beta = beta_1, ..., beta_d` be the roots of `T`. With `M` the
//! companion matrix of `T`, the characteristic polynomial of `G(M)` is
//! `prod (X - G(beta_i))`, a polynomial over `K`:
//!
//! * the values polynomial uses `G = Q` and the damped polynomial uses `G = (1 - X) Q`. Only the root coming from
//!   `beta` changes valuation between the two (`v(1 - beta) > 0` while
//!   `v(1 - beta_i) = 0` for `i > 1`), so their root-valuation lists agree
//!   iff `Q(beta) = 0`, and otherwise the first discrepancy is `v(Q(beta))`.
//! * the separated polynomial uses `G = X^m Q` for an `m` chosen so that the root
//!   `beta^m Q(beta)` sits alone on its edge of the Newton polygon; the edge
//!   then yields an immediate description in `K`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::field::{Field, Rational};
use crate::hensel::{slope_description, SpecialPoly};
use crate::matrix::Matrix;
use crate::newton::{NewtonPolygon, RootValuations};
use crate::poly::Poly;
use crate::value::Val;
use crate::valued::ValuedField;

/// `Zero`, or `x` in the base field with `xi = x (1 + mu)` for some `mu` of
/// positive valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImmediateDescription<E> {
    Zero,
    Value(E),
}

impl<E> ImmediateDescription<E> {
    pub fn value(&self) -> Option<&E> {
        match self {
            ImmediateDescription::Zero => None,
            ImmediateDescription::Value(x) => Some(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ImmediateDescription::Zero)
    }
}

/// Intermediate data of one description, for inspection and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptionTrace<E> {
    pub values: Poly<E>,
    pub damped: Poly<E>,
    pub value_valuations: RootValuations,
    pub damped_valuations: RootValuations,
    /// `v(Q(beta))`.
    pub value: Val,
    pub exponent: Option<u32>,
    pub separated: Option<Poly<E>>,
    /// Left end of the isolated edge of the separated polynomial the description was read from.
    pub segment: Option<usize>,
}

/// `prod_i (X - G(beta_i))`, the characteristic polynomial of `G(M)` for
/// the companion matrix `M` of `T`.
pub fn char_poly_of_values<F: Field>(field: &F, t: &SpecialPoly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
    let companion = Matrix::companion(field, t.poly()).expect("special polynomials are monic and nonconstant");
    let g = g.rem_monic(field, t.poly());
    companion.eval_poly(field, &g).char_poly(field)
}

struct ZeroTest<E> {
    values: Poly<E>,
    damped: Poly<E>,
    value_valuations: RootValuations,
    damped_valuations: RootValuations,
    value: Val,
}

fn root_vals<F: ValuedField>(field: &F, p: &Poly<F::Elem>) -> RootValuations {
    NewtonPolygon::of_poly(field, p).expect("characteristic polynomials are monic").root_valuations()
}

fn zero_test<F: ValuedField>(field: &F, t: &SpecialPoly<F::Elem>, q: &Poly<F::Elem>) -> ZeroTest<F::Elem> {
    let one_minus_x = Poly::new(field, alloc::vec![field.one(), field.neg(&field.one())]);
    let values = char_poly_of_values(field, t, q);
    let damped = char_poly_of_values(field, t, &one_minus_x.mul(field, q));
    let value_valuations = root_vals(field, &values);
    let damped_valuations = root_vals(field, &damped);
    let value = match value_valuations.as_slice().iter().zip(damped_valuations.as_slice()).position(|(a, b)| a != b) {
        None => Val::Infinity,
        Some(i) => {
            let w = value_valuations.as_slice()[i].clone();
            assert_one_value_raised(&value_valuations, &damped_valuations, &w);
            w
        }
    };
    ZeroTest { values, damped, value_valuations, damped_valuations, value }
}

/// The damped root-valuation list is the values list with one copy of `w` replaced by a
/// strictly larger value.
fn assert_one_value_raised(values: &RootValuations, damped: &RootValuations, w: &Val) {
    let mut rest: Vec<Val> = values.as_slice().to_vec();
    let pos = rest.iter().position(|v| v == w).expect("w is taken from the values list");
    rest.remove(pos);
    let mut extra = Vec::new();
    let mut i = 0;
    for v in damped.as_slice() {
        if i < rest.len() && rest[i] == *v {
            i += 1;
        } else {
            extra.push(v.clone());
        }
    }
    assert!(
        i == rest.len() && extra.len() == 1 && extra[0] > *w,
        "zero test: damped root valuations {:?} are not values {:?} with {} raised",
        damped.as_slice(),
        values.as_slice(),
        w
    );
}

/// Decides `Q(beta) = 0`.
pub fn is_zero_at<F: ValuedField>(field: &F, t: &SpecialPoly<F::Elem>, q: &Poly<F::Elem>) -> bool {
    zero_test(field, t, q).value == Val::Infinity
}

/// `v(Q(beta))`, read at the first index where the ascending root-valuation
/// lists of the values polynomial and the damped polynomial differ.
pub fn valuation_at<F: ValuedField>(field: &F, t: &SpecialPoly<F::Elem>, q: &Poly<F::Elem>) -> Val {
    zero_test(field, t, q).value
}

/// Smallest `m >= 1` such that `m * t != u - w` for every finite positive
/// `t` in `other_roots` and all finite `u`, `w` in `value_valuations`.
///
/// `other_roots` are the valuations of the roots of `T` other than the
/// special zero; infinite entries are ignored.
pub fn choose_exponent(other_roots: &[Val], value_valuations: &[Val]) -> u32 {
    let finite: Vec<&Rational> = value_valuations.iter().filter_map(Val::finite).collect();
    let differences: BTreeSet<Rational> = finite.iter().flat_map(|u| finite.iter().map(move |w| *u - *w)).collect();
    let steps: Vec<&Rational> = other_roots.iter().filter_map(Val::finite).collect();
    (1u32..)
        .find(|&m| {
            let m = Rational::from_integer(m.into());
            steps.iter().all(|t| !differences.contains(&(&m * *t)))
        })
        .expect("the excluded set is finite")
}

/// Valuations of the non-special roots of `T`: its root-valuation list with
/// one `0` removed.
pub fn other_root_valuations<F: ValuedField>(field: &F, t: &SpecialPoly<F::Elem>) -> Vec<Val> {
    let mut vals = root_vals(field, t.poly()).into_vec();
    let pos = vals.iter().position(|v| *v == Val::zero()).expect("a special polynomial has exactly one unit root");
    vals.remove(pos);
    vals
}

pub fn immediate_description<F: ValuedField>(
    field: &F,
    t: &SpecialPoly<F::Elem>,
    q: &Poly<F::Elem>,
) -> ImmediateDescription<F::Elem> {
    immediate_description_traced(field, t, q).0
}

pub fn immediate_description_traced<F: ValuedField>(
    field: &F,
    t: &SpecialPoly<F::Elem>,
    q: &Poly<F::Elem>,
) -> (ImmediateDescription<F::Elem>, DescriptionTrace<F::Elem>) {
    let ZeroTest { values, damped, value_valuations, damped_valuations, value } = zero_test(field, t, q);
    let mut trace = DescriptionTrace {
        values,
        damped,
        value_valuations,
        damped_valuations,
        value: value.clone(),
        exponent: None,
        separated: None,
        segment: None,
    };
    if value == Val::Infinity {
        return (ImmediateDescription::Zero, trace);
    }

    let m = choose_exponent(&other_root_valuations(field, t), trace.value_valuations.as_slice());
    let g3 = Poly::monomial(field, field.one(), m as usize).mul(field, q);
    let separated = char_poly_of_values(field, t, &g3);
    let polygon = NewtonPolygon::of_poly(field, &separated).expect("characteristic polynomials are monic");
    let k = polygon.isolated_segments().into_iter().find(|(_, v)| *v == value).map(|(k, _)| k).unwrap_or_else(|| {
        panic!(
            "no isolated edge of root valuation {} in the separated polynomial (root valuations {:?})",
            value,
            polygon.root_valuations().as_slice()
        )
    });
    let x = slope_description(field, &separated, k);
    trace.exponent = Some(m);
    trace.separated = Some(separated);
    trace.segment = Some(k);
    (ImmediateDescription::Value(x), trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::valued::PAdicRationals;
    use alloc::vec;
    use proptest::prelude::*;

    fn f5() -> PAdicRationals {
        PAdicRationals::new(5).unwrap()
    }

    fn q(cs: &[(i64, i64)]) -> Poly<Rational> {
        let cs: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
        Poly::from_rationals(&f5(), &cs)
    }

    fn worked_t() -> SpecialPoly<Rational> {
        SpecialPoly::new(&f5(), q(&[(25, 196), (-1, 1), (1, 1)])).unwrap()
    }

    #[test]
    fn char_poly_of_values_examples() {
        let f = f5();
        let t = worked_t();
        assert_eq!(char_poly_of_values(&f, &t, &q(&[(0, 1), (1, 1)])), t.poly().clone());
        assert_eq!(char_poly_of_values(&f, &t, t.poly()), q(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(
            char_poly_of_values(&f, &t, &q(&[(0, 1), (0, 1), (0, 1), (1, 1)])),
            q(&[(15625, 7529536), (-121, 196), (1, 1)])
        );
    }

    #[test]
    fn zero_test_examples() {
        let f = f5();
        let t = worked_t();
        assert!(is_zero_at(&f, &t, t.poly()));
        assert!(!is_zero_at(&f, &t, &q(&[(0, 1), (1, 1)])));
        let xt = t.poly().mul(&f, &q(&[(0, 1), (1, 1)]));
        assert!(is_zero_at(&f, &t, &xt));
    }

    #[test]
    fn valuation_examples() {
        let f = f5();
        let t = worked_t();
        assert_eq!(valuation_at(&f, &t, &q(&[(0, 1), (1, 1)])), Val::zero());
        // v(beta - c) = v(T(c)) because the other root has v = 2 > v(c) = 0
        let c = rat(121, 196);
        assert_eq!(f.val(&t.poly().eval(&f, &c)), Val::int(2));
        assert_eq!(valuation_at(&f, &t, &q(&[(-121, 196), (1, 1)])), Val::int(2));
        assert_eq!(valuation_at(&f, &t, &q(&[(3, 250)])), Val::int(-3));
    }

    #[test]
    fn choose_exponent_examples() {
        assert_eq!(choose_exponent(&[Val::int(2)], &[Val::int(0), Val::int(2)]), 2);
        assert_eq!(choose_exponent(&[], &[Val::int(0), Val::int(2)]), 1);
        assert_eq!(choose_exponent(&[Val::int(1)], &[Val::int(3)]), 1);
        assert_eq!(choose_exponent(&[Val::Infinity], &[Val::int(0), Val::int(1)]), 1);
        assert_eq!(choose_exponent(&[Val::int(1)], &[Val::int(0), Val::int(1), Val::int(2), Val::Infinity]), 3);
    }

    #[test]
    fn worked_description() {
        let f = f5();
        let t = worked_t();
        let (d, trace) = immediate_description_traced(&f, &t, &q(&[(0, 1), (1, 1)]));
        assert_eq!(d, ImmediateDescription::Value(rat(121, 196)));
        assert_eq!(trace.value_valuations.as_slice(), &[Val::int(0), Val::int(2)]);
        assert_eq!(trace.damped_valuations.as_slice(), &[Val::int(2), Val::int(2)]);
        assert_eq!(trace.exponent, Some(2));
        assert_eq!(trace.separated, Some(q(&[(15625, 7529536), (-121, 196), (1, 1)])));
        assert_eq!(trace.segment, Some(1));

        assert_eq!(immediate_description(&f, &t, t.poly()), ImmediateDescription::Zero);

        let d = immediate_description(&f, &t, &q(&[(-121, 196), (1, 1)]));
        assert_eq!(f.val(d.value().unwrap()), Val::int(2));
    }

    #[test]
    fn degree_one_special_is_evaluation_at_one() {
        let f = f5();
        let t = SpecialPoly::new(&f, q(&[(-1, 1), (1, 1)])).unwrap();
        let g = q(&[(3, 1), (2, 1)]);
        assert_eq!(immediate_description(&f, &t, &g), ImmediateDescription::Value(rat(5, 1)));
        assert!(is_zero_at(&f, &t, &q(&[(-2, 1), (2, 1)])));
    }

    #[test]
    fn special_polynomial_with_root_zero() {
        // T = X^3 - X^2 + 5X has roots 0, and two more; beta is not 0
        let f = f5();
        let t = SpecialPoly::new(&f, q(&[(0, 1), (5, 1), (-1, 1), (1, 1)])).unwrap();
        let x = q(&[(0, 1), (1, 1)]);
        assert!(!is_zero_at(&f, &t, &x));
        assert_eq!(valuation_at(&f, &t, &x), Val::zero());
        let d = immediate_description(&f, &t, &x);
        assert!(f.residue_is_one(d.value().unwrap()));
    }

    fn arb_special() -> impl Strategy<Value = SpecialPoly<Rational>> {
        (2usize..4, prop::collection::vec((-20i64..20, 1i64..30, 1u32..3), 2)).prop_map(|(d, ts)| {
            let f = f5();
            let mut cs: Vec<Rational> =
                ts[..d - 1].iter().map(|&(n, den, e)| rat(n * 5i64.pow(e), den * 5 + 1)).collect();
            cs.push(rat(-1, 1));
            cs.push(rat(1, 1));
            SpecialPoly::new(&f, Poly::new(&f, cs)).unwrap()
        })
    }

    fn arb_q() -> impl Strategy<Value = Poly<Rational>> {
        prop::collection::vec((-60i64..60, 1i64..60), 1..5).prop_map(|cs| {
            let cs: Vec<Rational> = cs.iter().map(|&(n, d)| rat(n, d)).collect();
            Poly::new(&f5(), cs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn description_contract(t in arb_special(), g in arb_q()) {
            let f = f5();
            match immediate_description(&f, &t, &g) {
                ImmediateDescription::Zero => prop_assert!(is_zero_at(&f, &t, &g)),
                ImmediateDescription::Value(x) => {
                    let vx = f.val(&x);
                    prop_assert!(vx.is_integral());
                    prop_assert_eq!(&vx, &valuation_at(&f, &t, &g));
                    let diff = g.sub(&f, &Poly::constant(&f, x));
                    prop_assert!(valuation_at(&f, &t, &diff) > vx);
                }
            }
        }

        #[test]
        fn multiples_of_t_vanish(t in arb_special(), g in arb_q()) {
            let f = f5();
            prop_assert!(is_zero_at(&f, &t, &g.mul(&f, t.poly())));
        }

        #[test]
        fn valuation_is_multiplicative(t in arb_special(), g in arb_q(), h in arb_q()) {
            let f = f5();
            let lhs = valuation_at(&f, &t, &g.mul(&f, &h));
            let rhs = valuation_at(&f, &t, &g).add(&valuation_at(&f, &t, &h));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zero_polynomial_is_zero() {
        let f = f5();
        assert!(is_zero_at(&f, &worked_t(), &Poly::zero()));
        assert_eq!(vec![Val::Infinity; 2], {
            let (_, tr) = immediate_description_traced(&f, &worked_t(), &Poly::zero());
            tr.value_valuations.into_vec()
        });
    }
}
