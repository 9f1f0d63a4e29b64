//! Classical Hensel-Newton lifting in `Z/p^N`: an independent check on the
//! exact algorithms. Nothing in the rest of the crate calls into this
//! module.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::field::Rational;
use crate::hensel::SpecialPoly;
use crate::henselization::{Element, Tower};
use crate::poly::Poly;
use crate::value::Val;
use crate::valued::{check_prime, padic_val};

pub const DEFAULT_PRECISION: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("{0} has p in its denominator")]
    NotPIntegral(Rational),
    #[error("lifting precondition failed: P(a) is not divisible by p")]
    ValueNotInMaximalIdeal,
    #[error("lifting precondition failed: P'(a) is divisible by p")]
    DerivativeNotUnit,
    #[error("precision {precision} is insufficient for a description of valuation {valuation}")]
    InsufficientPrecision { precision: u32, valuation: i64 },
    #[error("the zero element has no immediate description to check")]
    ZeroDescription,
    #[error("a denominator is divisible by p; modular approximation loses precision")]
    NonUnitDenominator,
    #[error("approximations use different moduli")]
    ModulusMismatch,
}

/// An element of `Z_p` known modulo `p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularApprox {
    residue: BigInt,
    p: u64,
    precision: u32,
}

fn modulus(p: u64, precision: u32) -> BigInt {
    Pow::pow(BigInt::from(p), precision)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Newton iteration on residue coefficients, doubling the precision each
/// step.
fn lift_residues(coeffs: &[BigInt], start: &BigInt, p: u64, precision: u32) -> Result<BigInt, OracleError> {
    let pb = BigInt::from(p);
    let dcoeffs = derivative(coeffs);
    if !eval_mod(coeffs, start, &pb).is_zero() {
        return Err(OracleError::ValueNotInMaximalIdeal);
    }
    if eval_mod(&dcoeffs, start, &pb).is_zero() {
        return Err(OracleError::DerivativeNotUnit);
    }
    let mut r = start.mod_floor(&pb);
    let mut k = 1;
    while k < precision {
        k = (2 * k).min(precision);
        let m = modulus(p, k);
        let num = eval_mod(coeffs, &r, &m);
        let den = eval_mod(&dcoeffs, &r, &m);
        let inv = inverse_mod(&den, &m).ok_or(OracleError::DerivativeNotUnit)?;
        r = (r - num * inv).mod_floor(&m);
    }
    Ok(r)
}

impl ModularApprox {
    pub fn new(residue: BigInt, p: u64, precision: u32) -> Result<Self, OracleError> {
        check_prime(p).ok_or(OracleError::NotPrime(p))?;
        if precision == 0 {
            return Err(OracleError::ZeroPrecision);
        }
        let residue = residue.mod_floor(&modulus(p, precision));
        Ok(ModularApprox { residue, p, precision })
    }

    /// Image of a p-integral rational.
    pub fn from_rational(q: &Rational, p: u64, precision: u32) -> Result<Self, OracleError> {
        let m = modulus(p, precision);
        let inv = inverse_mod(q.denom(), &m).ok_or_else(|| OracleError::NotPIntegral(q.clone()))?;
        Self::new(q.numer() * inv, p, precision)
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> BigInt {
        modulus(self.p, self.precision)
    }

    fn same_ring(&self, other: &Self) -> Result<(), OracleError> {
        if self.p != other.p || self.precision != other.precision {
            return Err(OracleError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_ring(other)?;
        Self::new(&self.residue + &other.residue, self.p, self.precision)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_ring(other)?;
        Self::new(&self.residue * &other.residue, self.p, self.precision)
    }

    /// Inverse of a unit; `NonUnitDenominator` if `p` divides the residue.
    pub fn inv(&self) -> Result<Self, OracleError> {
        let inv = inverse_mod(&self.residue, &self.modulus()).ok_or(OracleError::NonUnitDenominator)?;
        Self::new(inv, self.p, self.precision)
    }

    /// `P(self)` for a polynomial with p-integral coefficients.
    pub fn eval_poly(&self, poly: &Poly<Rational>) -> Result<Self, OracleError> {
        let m = self.modulus();
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| Self::from_rational(c, self.p, self.precision).map(|a| a.residue))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(eval_mod(&coeffs, &self.residue, &m), self.p, self.precision)
    }
}

/// The root of `P` congruent to `a` modulo `p`, known modulo `p^N`.
pub fn hensel_lift(poly: &Poly<Rational>, a: &BigInt, p: u64, precision: u32) -> Result<ModularApprox, OracleError> {
    check_prime(p).ok_or(OracleError::NotPrime(p))?;
    if precision == 0 {
        return Err(OracleError::ZeroPrecision);
    }
    let pb = BigInt::from(p);
    if let Some(c) = poly.coeffs().iter().find(|c| padic_val(c, &pb) < Val::zero()) {
        return Err(OracleError::NotPIntegral(c.clone()));
    }
    let coeffs = poly
        .coeffs()
        .iter()
        .map(|c| ModularApprox::from_rational(c, p, precision).map(|x| x.residue))
        .collect::<Result<Vec<_>, _>>()?;
    let r = lift_residues(&coeffs, a, p, precision)?;
    ModularApprox::new(r, p, precision)
}

/// Approximation of the special zero (the lift of `1`).
pub fn special_zero_approx(t: &SpecialPoly<Rational>, p: u64, precision: u32) -> Result<ModularApprox, OracleError> {
    hensel_lift(t.poly(), &BigInt::one(), p, precision)
}

/// Whether `xi = x (1 + mu)` with `v(mu) >= 1` is consistent with the
/// approximation of `xi`, i.e. `v_p(xi - x) > v_p(x)`.
pub fn check_description(xi: &ModularApprox, x: &Rational) -> Result<bool, OracleError> {
    let pb = BigInt::from(xi.p);
    let v = match padic_val(x, &pb) {
        Val::Infinity => return Err(OracleError::ZeroDescription),
        Val::Finite(v) => v.to_integer().try_into().expect("valuation fits in i64"),
    };
    if v < 0 {
        return Err(OracleError::NotPIntegral(x.clone()));
    }
    if i64::from(xi.precision) <= v + 1 {
        return Err(OracleError::InsufficientPrecision { precision: xi.precision, valuation: v });
    }
    let xa = ModularApprox::from_rational(x, xi.p, xi.precision)?;
    let diff = (&xi.residue - &xa.residue).mod_floor(&xi.modulus());
    Ok(diff.mod_floor(&modulus(xi.p, v as u32 + 1)).is_zero())
}

/// `r * p^-s + O(p^abs)` with `0 <= r < p^(abs + s)`. When `s > 0`, `p`
/// does not divide `r`; a zero `r` always has `s = 0`.
#[derive(Debug, Clone)]
struct Approx {
    r: BigInt,
    s: u32,
    abs: i64,
}

/// Arithmetic with capped absolute precision, used to evaluate tower
/// elements whose representation involves denominators divisible by `p`.
struct Capped {
    prime: u64,
    p: BigInt,
}

impl Capped {
    fn pow(&self, n: i64) -> BigInt {
        Pow::pow(&self.p, n.max(0) as u64)
    }

    fn normalize(&self, mut r: BigInt, mut s: u32, abs: i64) -> Approx {
        let width = abs + i64::from(s);
        r = if width <= 0 { BigInt::zero() } else { r.mod_floor(&self.pow(width)) };
        while s > 0 && !r.is_zero() && r.is_multiple_of(&self.p) {
            r /= &self.p;
            s -= 1;
        }
        if r.is_zero() {
            s = 0;
        }
        Approx { r, s, abs }
    }

    /// Exact valuation, or the precision when the value is indistinguishable
    /// from zero.
    fn val(&self, x: &Approx) -> i64 {
        if x.r.is_zero() {
            return x.abs;
        }
        let mut v = 0;
        let mut r = x.r.clone();
        while r.is_multiple_of(&self.p) {
            r /= &self.p;
            v += 1;
        }
        v - i64::from(x.s)
    }

    fn rational(&self, q: &Rational, abs: i64) -> Approx {
        let v = match padic_val(q, &self.p) {
            Val::Infinity => return Approx { r: BigInt::zero(), s: 0, abs },
            Val::Finite(v) => v.to_integer(),
        };
        let s: u32 = if v < BigInt::zero() { (-v).try_into().expect("valuation fits in u32") } else { 0 };
        let scaled = q * Rational::from_integer(Pow::pow(&self.p, s));
        let m = self.pow(abs + i64::from(s));
        let inv = inverse_mod(scaled.denom(), &m).expect("denominator is a unit");
        self.normalize(scaled.numer() * inv, s, abs)
    }

    fn add(&self, x: &Approx, y: &Approx) -> Approx {
        let s = x.s.max(y.s);
        let r = &x.r * Pow::pow(&self.p, s - x.s) + &y.r * Pow::pow(&self.p, s - y.s);
        self.normalize(r, s, x.abs.min(y.abs))
    }

    fn mul(&self, x: &Approx, y: &Approx) -> Approx {
        let abs = (x.abs + self.val(y)).min(y.abs + self.val(x));
        self.normalize(&x.r * &y.r, x.s + y.s, abs)
    }

    fn inv(&self, x: &Approx) -> Result<Approx, OracleError> {
        if x.r.is_zero() {
            return Err(OracleError::NonUnitDenominator);
        }
        let v = self.val(x);
        let mut unit = x.r.clone();
        while unit.is_multiple_of(&self.p) {
            unit /= &self.p;
        }
        let relative = x.abs - v;
        let inv = inverse_mod(&unit, &self.pow(relative)).expect("unit");
        let abs = relative - v;
        Ok(if v > 0 { self.normalize(inv, v as u32, abs) } else { self.normalize(inv * self.pow(-v), 0, abs) })
    }
}

/// Approximates a tower element modulo `p^precision` by lifting each
/// level's special zero with approximated coefficients.
///
/// Intermediate denominators may be divisible by `p`; the evaluation then
/// loses precision, and is retried at a higher working precision until the
/// result is known to `precision` digits.
pub fn approximate_element(tower: &Tower, e: &Element, precision: u32) -> Result<ModularApprox, OracleError> {
    let p = tower.base().p();
    check_prime(p).ok_or(OracleError::NotPrime(p))?;
    if precision == 0 {
        return Err(OracleError::ZeroPrecision);
    }
    let arith = Capped { prime: p, p: BigInt::from(p) };
    let target = i64::from(precision);
    let mut working = target + 8;
    loop {
        let mut betas: Vec<Option<Approx>> = alloc::vec![None; tower.depth() + 1];
        let lost = match approximate(&arith, tower, e, working, &mut betas) {
            Ok(x) if x.s > 0 && x.abs > 0 => {
                return Err(OracleError::NotPIntegral(Rational::new(x.r, Pow::pow(BigInt::from(p), x.s))))
            }
            Ok(x) if x.abs >= target => return ModularApprox::new(x.r, p, precision),
            Ok(x) => working - x.abs,
            Err(OracleError::NonUnitDenominator) => working,
            Err(e) => return Err(e),
        };
        if working > 64 * target + 1024 {
            return Err(OracleError::NonUnitDenominator);
        }
        working = working + lost.max(working / 2);
    }
}

fn approximate(
    arith: &Capped,
    tower: &Tower,
    e: &Element,
    working: i64,
    betas: &mut Vec<Option<Approx>>,
) -> Result<Approx, OracleError> {
    match e {
        Element::Rat(q) => Ok(arith.rational(q, working)),
        Element::Ext(f) => {
            let beta = beta_approx(arith, tower, f.level(), working, betas)?;
            let mut eval = |poly: &Poly<Element>| -> Result<Approx, OracleError> {
                let mut acc = arith.rational(&Rational::zero(), working);
                for c in poly.coeffs().iter().rev() {
                    let c = approximate(arith, tower, c, working, betas)?;
                    acc = arith.add(&arith.mul(&acc, &beta), &c);
                }
                Ok(acc)
            };
            let num = eval(f.num())?;
            let den = eval(f.den())?;
            Ok(arith.mul(&num, &arith.inv(&den)?))
        }
    }
}

fn beta_approx(
    arith: &Capped,
    tower: &Tower,
    level: usize,
    working: i64,
    betas: &mut Vec<Option<Approx>>,
) -> Result<Approx, OracleError> {
    if let Some(b) = &betas[level] {
        return Ok(b.clone());
    }
    let coeffs = tower
        .special(level)
        .poly()
        .coeffs()
        .iter()
        .map(|c| approximate(arith, tower, c, working, betas))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.iter().any(|c| c.s > 0) {
        return Err(OracleError::NonUnitDenominator);
    }
    let abs = coeffs.iter().map(|c| c.abs).min().unwrap_or(working);
    if abs < 1 {
        return Err(OracleError::NonUnitDenominator);
    }
    let residues: Vec<BigInt> = coeffs.into_iter().map(|c| c.r).collect();
    let r = lift_residues(&residues, &BigInt::one(), arith.prime, abs as u32)?;
    let b = Approx { r, s: 0, abs };
    betas[level] = Some(b.clone());
    Ok(b)
}

impl core::fmt::Display for ModularApprox {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
    }
}
