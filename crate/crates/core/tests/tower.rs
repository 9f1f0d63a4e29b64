use hensel_core::field::rat;
use hensel_core::oracle::{approximate_element, check_description, OracleError};
use hensel_core::{Element, Field, HenselCode, ImmediateDescription, Poly, Rational, Tower, Val, ValuedField};
use proptest::prelude::*;

fn adjoin(t: &Tower, coeffs: &[(i64, i64)], point: i64) -> (Tower, Element) {
    let c: Vec<Rational> = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
    let p = Poly::from_rationals(t, &c);
    let code = HenselCode::new(t, p, t.from_int(point)).unwrap();
    let z = t.hensel_zero(&code).unwrap();
    (z.tower, z.root)
}

/// The square root of 6 near 1 and a root of `x^3 - x - 5` near 0, over
/// `Q` with the 5-adic valuation.
fn depth_two() -> (Tower, Element, Element) {
    let (t, a) = adjoin(&Tower::new(5).unwrap(), &[(-6, 1), (0, 1), (1, 1)], 1);
    let (t, b) = adjoin(&t, &[(-5, 1), (-1, 1), (0, 1), (1, 1)], 0);
    (t, a, b)
}

/// `sum c_ij a^i b^j` for `i, j < 2`.
fn combination(t: &Tower, a: &Element, b: &Element, c: &[Rational; 4]) -> Element {
    let ab = t.mul(a, b);
    [t.one(), a.clone(), b.clone(), ab]
        .iter()
        .zip(c)
        .fold(t.zero(), |acc, (m, c)| t.add(&acc, &t.mul(m, &Element::Rat(c.clone()))))
}

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn arb_coeffs() -> impl Strategy<Value = [Rational; 4]> {
    [arb_rat(), arb_rat(), arb_rat(), arb_rat()]
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

#[test]
fn defining_relations_hold() {
    let (t, a, b) = depth_two();
    assert!(t.element_equals(&t.mul(&a, &a), &t.from_int(6)));
    let b3 = t.pow(&b, 3);
    assert!(t.element_equals(&b3, &t.add(&b, &t.from_int(5))));
    assert_eq!(t.val(&b), Val::int(1));
    assert_eq!(t.val(&t.sub(&a, &t.one())), Val::int(1));
    assert!(!t.element_equals(&a, &t.neg(&a)));
}

#[test]
fn merge_matches_sequential_construction() {
    let base = Tower::new(5).unwrap();
    let (ta, a) = adjoin(&base, &[(-6, 1), (0, 1), (1, 1)], 1);
    let (tb, b) = adjoin(&base, &[(-5, 1), (-1, 1), (0, 1), (1, 1)], 0);
    let merged = ta.merge(&tb).unwrap();
    let b = b.with_level_offset(ta.depth());
    assert_eq!(merged.depth(), 2);
    let x = t_expr(&merged, &a, &b);
    let (seq, a2, b2) = depth_two();
    let y = t_expr(&seq, &a2, &b2);
    assert_eq!(merged.val(&x), seq.val(&y));
    assert_eq!(merged.describe_to_base(&x).is_zero(), seq.describe_to_base(&y).is_zero());
}

fn t_expr(t: &Tower, a: &Element, b: &Element) -> Element {
    let num = t.sub(&t.mul(a, b), &t.from_int(1));
    t.div(&num, &t.add(b, &t.from_int(7))).unwrap()
}

#[test]
fn merging_different_primes_fails() {
    let a = Tower::new(5).unwrap();
    let b = Tower::new(7).unwrap();
    assert!(a.merge(&b).is_err());
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn inverse_and_valuation_are_consistent(c in arb_coeffs(), d in arb_coeffs()) {
        let (t, a, b) = depth_two();
        let x = combination(&t, &a, &b, &c);
        let y = combination(&t, &a, &b, &d);
        let vx = t.val(&x);
        prop_assert_eq!(t.val(&t.mul(&x, &y)), vx.add(&t.val(&y)));
        if vx != Val::Infinity {
            let inv = t.inv(&x).unwrap();
            prop_assert!(t.element_equals(&t.mul(&x, &inv), &t.one()));
        } else {
            prop_assert!(t.inv(&x).is_err());
        }
    }

    #[test]
    fn ultrametric(c in arb_coeffs(), d in arb_coeffs()) {
        let (t, a, b) = depth_two();
        let x = combination(&t, &a, &b, &c);
        let y = combination(&t, &a, &b, &d);
        let (vx, vy) = (t.val(&x), t.val(&y));
        let vs = t.val(&t.add(&x, &y));
        prop_assert!(vs >= vx.clone().min(vy.clone()));
        if vx != vy {
            prop_assert_eq!(vs, vx.min(vy));
        }
    }

    #[test]
    fn descriptions_agree_with_the_oracle(c in arb_coeffs()) {
        let (t, a, b) = depth_two();
        let x = combination(&t, &a, &b, &c);
        let approx = match approximate_element(&t, &x, 40) {
            Ok(approx) => approx,
            Err(OracleError::NotPIntegral(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("oracle failed: {e}"))),
        };
        match t.describe_to_base(&x) {
            ImmediateDescription::Zero => prop_assert!(num_traits::Zero::is_zero(approx.residue())),
            ImmediateDescription::Value(d) => {
                prop_assert_eq!(t.base().val(&d), t.val(&x));
                prop_assert_eq!(check_description(&approx, &d), Ok(true));
            }
        }
    }
}
