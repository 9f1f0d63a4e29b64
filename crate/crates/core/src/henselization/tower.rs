//! Towers of special-zero extensions of `Q` with a p-adic valuation.
//!
//! Level `l` (counted from 1) adjoins the special zero `beta_l` of a special
//! polynomial whose coefficients live in the field of levels `< l`. An
//! [`Element`] is either a rational or a fraction `num(beta_l) / den(beta_l)`
//! whose coefficients are elements of lower levels. Arithmetic reduces
//! modulo the defining polynomials and never factors them, which is why
//! elements are fractions: inverses only need a zero test of the
//! denominator.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_traits::{One, Zero};

use crate::field::{Field, Rational, Rationals};
use crate::hensel::{resolve_code, HenselChain, HenselCode, SpecialOutcome, SpecialPoly};
use crate::henselization::describe::{immediate_description, valuation_at, ImmediateDescription};
use crate::poly::Poly;
use crate::value::Val;
use crate::valued::{padic_val, PAdicRationals, ValuedField};
use crate::Error;

/// An element of a [`Tower`].
///
/// `PartialEq`, `Ord` and `Hash` compare *representations*. Two different
/// representations may denote the same field element; use
/// [`Tower::element_equals`] for field equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Rat(Rational),
    Ext(Arc<Fraction>),
}

/// `num(beta_level) / den(beta_level)`, both reduced modulo the defining
/// polynomial of the level; the denominator does not vanish at `beta_level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction {
    level: usize,
    num: Poly<Element>,
    den: Poly<Element>,
}

impl Fraction {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn num(&self) -> &Poly<Element> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Element> {
        &self.den
    }
}

impl Element {
    /// Highest level the element involves; `0` for rationals.
    pub fn level(&self) -> usize {
        match self {
            Element::Rat(_) => 0,
            Element::Ext(f) => f.level,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Element::Rat(q) => Some(q),
            Element::Ext(_) => None,
        }
    }

    pub fn as_fraction(&self) -> Option<&Fraction> {
        match self {
            Element::Rat(_) => None,
            Element::Ext(f) => Some(f),
        }
    }

    /// Renumbers every level `l >= 1` to `l + offset`.
    pub fn with_level_offset(&self, offset: usize) -> Element {
        match self {
            Element::Rat(_) => self.clone(),
            Element::Ext(f) => {
                let map = |p: &Poly<Element>| {
                    Poly::from_raw(p.coeffs().iter().map(|c| c.with_level_offset(offset)).collect())
                };
                Element::Ext(Arc::new(Fraction { level: f.level + offset, num: map(&f.num), den: map(&f.den) }))
            }
        }
    }

    fn is_literal_one(&self) -> bool {
        matches!(self, Element::Rat(q) if q.is_one())
    }
}

impl From<Rational> for Element {
    fn from(q: Rational) -> Self {
        Element::Rat(q)
    }
}

#[derive(Clone)]
struct Memo {
    value: Val,
    description: Option<ImmediateDescription<Element>>,
}

struct Level {
    special: SpecialPoly<Element>,
    // Keyed by polynomials already reduced modulo the special polynomial.
    memo: RefCell<BTreeMap<Poly<Element>, Memo>>,
}

impl Level {
    fn new(special: SpecialPoly<Element>) -> Self {
        Level { special, memo: RefCell::new(BTreeMap::new()) }
    }
}

/// A finite tower `K[beta_1, ..., beta_n]` over `K = Q` with `v_p`.
///
/// The tower is itself a [`ValuedField`] whose elements are [`Element`]s.
/// It memoizes zero tests and descriptions per level; the memo tables are
/// not synchronized, so a tower stays on one thread.
#[derive(Clone)]
pub struct Tower {
    base: PAdicRationals,
    levels: Vec<Rc<Level>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("p", &self.base.p())
            .field("levels", &self.levels.iter().map(|l| &l.special).collect::<Vec<_>>())
            .finish()
    }
}

/// Outcome of adjoining the root of a Hensel code.
#[derive(Debug, Clone)]
pub struct HenselZero {
    pub tower: Tower,
    pub root: Element,
    pub chain: HenselChain<Element>,
}

impl Tower {
    pub fn new(p: u64) -> Result<Self, Error> {
        Ok(Self::over(PAdicRationals::new(p)?))
    }

    pub fn over(base: PAdicRationals) -> Self {
        Tower { base, levels: Vec::new() }
    }

    pub fn base(&self) -> &PAdicRationals {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Defining polynomial of level `level` (1-based).
    pub fn special(&self, level: usize) -> &SpecialPoly<Element> {
        &self.levels[level - 1].special
    }

    /// The special zero `beta_level`.
    pub fn generator(&self, level: usize) -> Element {
        let x = Poly::x(self);
        self.make(level, x, Poly::constant(self, self.one()))
    }

    fn check_level(&self, e: &Element) -> Result<(), Error> {
        if e.level() > self.depth() {
            return Err(Error::LevelOutOfRange { level: e.level(), depth: self.depth() });
        }
        Ok(())
    }

    /// Adjoins the special zero of `t`. When `t(1) = 0` the zero is `1` and
    /// the tower is returned unchanged.
    pub fn extend(&self, t: SpecialPoly<Element>) -> Result<(Tower, Element), Error> {
        for c in t.poly().coeffs() {
            self.check_level(c)?;
        }
        if self.is_zero(&t.poly().eval(self, &self.one())) {
            return Ok((self.clone(), self.one()));
        }
        let mut tower = self.clone();
        tower.levels.push(Rc::new(Level::new(t)));
        let beta = tower.generator(tower.depth());
        Ok((tower, beta))
    }

    /// Adjoins the root of a Hensel code over this tower.
    pub fn hensel_zero(&self, code: &HenselCode<Element>) -> Result<HenselZero, Error> {
        for c in code.poly().coeffs().iter().chain([code.point()]) {
            self.check_level(c)?;
        }
        let chain = resolve_code(self, code)?;
        let (tower, root) = match &chain.root {
            SpecialOutcome::Exact(x) => (self.clone(), x.clone()),
            SpecialOutcome::Extended { special, mobius } => {
                let (tower, beta) = self.extend(special.clone())?;
                let root = if tower.depth() == self.depth() {
                    mobius.apply(&tower, &beta)?
                } else {
                    let level = tower.depth();
                    let num = Poly::new(&tower, vec![mobius.b.clone(), mobius.a.clone()]);
                    let den = Poly::new(&tower, vec![mobius.d.clone(), mobius.c.clone()]);
                    debug_assert!(!tower.level_is_zero(level, &den), "Mobius denominator vanishes");
                    tower.make(level, num, den)
                };
                (tower, root)
            }
        };
        Ok(HenselZero { tower, root, chain })
    }

    /// `num(beta_level) / den(beta_level)`. Fails if the denominator
    /// vanishes at `beta_level`.
    pub fn fraction(&self, level: usize, num: Poly<Element>, den: Poly<Element>) -> Result<Element, Error> {
        if level == 0 || level > self.depth() {
            return Err(Error::LevelOutOfRange { level, depth: self.depth() });
        }
        for c in num.coeffs().iter().chain(den.coeffs()) {
            if c.level() >= level {
                return Err(Error::LevelOutOfRange { level: c.level(), depth: level - 1 });
            }
        }
        let t = self.special(level).poly();
        let den = den.rem_monic(self, t);
        if den.is_zero() || self.level_is_zero(level, &den) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.make(level, num, den))
    }

    /// Concatenates the levels of `self` and then `other`. Elements of
    /// `self` embed unchanged; elements of `other` embed through
    /// [`Element::with_level_offset`] with offset `self.depth()`.
    pub fn merge(&self, other: &Tower) -> Result<Tower, Error> {
        if self.base.p() != other.base.p() {
            return Err(Error::BottomFieldMismatch { left: self.base.p(), right: other.base.p() });
        }
        let offset = self.depth();
        let mut levels = self.levels.clone();
        levels.extend(
            other.levels.iter().map(|l| Rc::new(Level::new(l.special.map_unchecked(|c| c.with_level_offset(offset))))),
        );
        Ok(Tower { base: self.base.clone(), levels })
    }

    pub fn element_equals(&self, a: &Element, b: &Element) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// `v(a) >= v(b)`.
    pub fn element_val_ge(&self, a: &Element, b: &Element) -> bool {
        self.val_ge(a, b)
    }

    /// An immediate description of `e` in `Q`, obtained level by level.
    pub fn describe_to_base(&self, e: &Element) -> ImmediateDescription<Rational> {
        let mut cur = e.clone();
        loop {
            match cur {
                Element::Rat(q) if q.is_zero() => return ImmediateDescription::Zero,
                Element::Rat(q) => return ImmediateDescription::Value(q),
                Element::Ext(f) => {
                    let ImmediateDescription::Value(x) = self.level_description(f.level, &f.num) else {
                        return ImmediateDescription::Zero;
                    };
                    let ImmediateDescription::Value(y) = self.level_description(f.level, &f.den) else {
                        panic!("denominator of a tower element described as zero");
                    };
                    cur = self.mul(&x, &self.inv_nonzero(&y));
                }
            }
        }
    }

    /// Immediate description of `q(beta_level)` in the field below `level`.
    pub fn describe_at(&self, level: usize, q: &Poly<Element>) -> ImmediateDescription<Element> {
        let q = q.rem_monic(self, self.special(level).poly());
        self.level_description(level, &q)
    }

    /// `v(q(beta_level))`.
    pub fn valuation_at(&self, level: usize, q: &Poly<Element>) -> Val {
        let q = q.rem_monic(self, self.special(level).poly());
        self.level_value(level, &q)
    }

    // `q` must already be reduced modulo the level's special polynomial.
    fn level_value(&self, level: usize, q: &Poly<Element>) -> Val {
        match q.degree() {
            None => return Val::Infinity,
            Some(0) => return self.val(&q.coeffs()[0]),
            _ => {}
        }
        let lvl = &self.levels[level - 1];
        if let Some(m) = lvl.memo.borrow().get(q) {
            return m.value.clone();
        }
        let value = valuation_at(self, &lvl.special, q);
        lvl.memo.borrow_mut().entry(q.clone()).or_insert(Memo { value: value.clone(), description: None });
        value
    }

    fn level_description(&self, level: usize, q: &Poly<Element>) -> ImmediateDescription<Element> {
        match q.degree() {
            None => return ImmediateDescription::Zero,
            Some(0) if self.is_zero(&q.coeffs()[0]) => return ImmediateDescription::Zero,
            Some(0) => return ImmediateDescription::Value(q.coeffs()[0].clone()),
            _ => {}
        }
        let lvl = &self.levels[level - 1];
        if let Some(Memo { description: Some(d), .. }) = lvl.memo.borrow().get(q) {
            return d.clone();
        }
        let description = immediate_description(self, &lvl.special, q);
        let value = match &description {
            ImmediateDescription::Zero => Val::Infinity,
            ImmediateDescription::Value(x) => self.val(x),
        };
        lvl.memo.borrow_mut().insert(q.clone(), Memo { value, description: Some(description.clone()) });
        description
    }

    fn level_is_zero(&self, level: usize, q: &Poly<Element>) -> bool {
        self.level_value(level, q) == Val::Infinity
    }

    /// Numerator and denominator of `x` as polynomials in `beta_level`,
    /// for `x.level() <= level`.
    fn parts(&self, x: &Element, level: usize) -> (Poly<Element>, Poly<Element>) {
        match x {
            Element::Ext(f) if f.level == level => (f.num.clone(), f.den.clone()),
            _ => (Poly::constant(self, x.clone()), Poly::constant(self, self.one())),
        }
    }

    /// Normal form of `num / den` at `level`; `den` must not vanish at
    /// `beta_level`.
    fn make(&self, level: usize, num: Poly<Element>, den: Poly<Element>) -> Element {
        assert!(level <= self.depth(), "element refers to level {level} of a depth {} tower", self.depth());
        let t = self.special(level).poly();
        let mut num = num.rem_monic(self, t);
        let mut den = den.rem_monic(self, t);
        if num.is_zero() {
            return Element::Rat(Rational::zero());
        }
        if den.degree() == Some(0) && !den.coeffs()[0].is_literal_one() {
            let inv = self.inv_nonzero(&den.coeffs()[0]);
            num = num.scale(self, &inv);
            den = Poly::constant(self, self.one());
        }
        if let Some((n, d)) = cancel_rational(&num, &den) {
            (num, den) = (n, d);
        } else if let Some(Element::Rat(lead)) = den.leading() {
            if !lead.is_one() {
                let inv = Element::Rat(lead.recip());
                num = num.scale(self, &inv);
                den = den.scale(self, &inv);
            }
        }
        if num == den {
            return self.one();
        }
        if den.degree() == Some(0) && num.degree() == Some(0) {
            return num.coeffs()[0].clone();
        }
        Element::Ext(Arc::new(Fraction { level, num, den }))
    }

    /// Inverse of an element known to be nonzero; skips the zero test.
    fn inv_nonzero(&self, x: &Element) -> Element {
        match x {
            Element::Rat(q) => Element::Rat(q.recip()),
            Element::Ext(f) => self.make(f.level, f.den.clone(), f.num.clone()),
        }
    }
}

fn to_rational_poly(p: &Poly<Element>) -> Option<Poly<Rational>> {
    let coeffs = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect::<Option<Vec<_>>>()?;
    Some(Poly::new(&Rationals, coeffs))
}

fn monic(p: &Poly<Rational>) -> Poly<Rational> {
    let lead = p.leading().expect("nonzero polynomial").recip();
    p.scale(&Rationals, &lead)
}

/// For rational coefficients: divides out the gcd and makes the
/// denominator monic.
fn cancel_rational(num: &Poly<Element>, den: &Poly<Element>) -> Option<(Poly<Element>, Poly<Element>)> {
    let n = to_rational_poly(num)?;
    let d = to_rational_poly(den)?;
    let (mut a, mut b) = (n.clone(), d.clone());
    while !b.is_zero() {
        let r = a.rem_monic(&Rationals, &monic(&b));
        (a, b) = (b, r);
    }
    let g = monic(&a);
    let n = n.div_rem_monic(&Rationals, &g).0;
    let d = d.div_rem_monic(&Rationals, &g).0;
    let lead = d.leading().expect("nonzero denominator").recip();
    let lift = |p: Poly<Rational>| {
        Poly::from_raw(p.scale(&Rationals, &lead).into_coeffs().into_iter().map(Element::Rat).collect())
    };
    Some((lift(n), lift(d)))
}

impl Field for Tower {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::Rat(Rational::zero())
    }

    fn one(&self) -> Element {
        Element::Rat(Rational::one())
    }

    fn from_rational(&self, q: &Rational) -> Element {
        Element::Rat(q.clone())
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        if let (Element::Rat(x), Element::Rat(y)) = (a, b) {
            return Element::Rat(x + y);
        }
        let level = a.level().max(b.level());
        let (an, ad) = self.parts(a, level);
        let (bn, bd) = self.parts(b, level);
        if ad == bd {
            self.make(level, an.add(self, &bn), ad)
        } else {
            let num = an.mul(self, &bd).add(self, &bn.mul(self, &ad));
            self.make(level, num, ad.mul(self, &bd))
        }
    }

    fn neg(&self, a: &Element) -> Element {
        match a {
            Element::Rat(q) => Element::Rat(-q),
            Element::Ext(f) => {
                Element::Ext(Arc::new(Fraction { level: f.level, num: f.num.neg(self), den: f.den.clone() }))
            }
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        if let (Element::Rat(x), Element::Rat(y)) = (a, b) {
            return Element::Rat(x * y);
        }
        let level = a.level().max(b.level());
        let (an, ad) = self.parts(a, level);
        let (bn, bd) = self.parts(b, level);
        self.make(level, an.mul(self, &bn), ad.mul(self, &bd))
    }

    fn inv(&self, a: &Element) -> Result<Element, Error> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    fn is_zero(&self, a: &Element) -> bool {
        match a {
            Element::Rat(q) => q.is_zero(),
            Element::Ext(f) => self.level_is_zero(f.level, &f.num),
        }
    }

    fn is_trivially_zero(&self, a: &Element) -> bool {
        matches!(a, Element::Rat(q) if q.is_zero())
    }
}

impl ValuedField for Tower {
    fn val(&self, x: &Element) -> Val {
        match x {
            Element::Rat(q) => padic_val(q, self.base.prime()),
            Element::Ext(f) => {
                let num = self.level_value(f.level, &f.num);
                let den = self.level_value(f.level, &f.den);
                match (num, den) {
                    (Val::Finite(n), Val::Finite(d)) => Val::Finite(n - d),
                    (Val::Infinity, _) => Val::Infinity,
                    (_, Val::Infinity) => panic!("denominator of a tower element vanishes"),
                }
            }
        }
    }
}
