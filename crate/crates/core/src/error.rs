use alloc::string::String;

use thiserror::Error;

/// Failures of the exact algorithms.
///
/// Messages name the condition that failed in valuation-theoretic terms, so
/// front ends can print them unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree 0 (a degree >= 1 polynomial is required)")]
    ConstantPolynomial,
    #[error("zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("reversal length {requested} is smaller than the degree {degree}")]
    ReverseTooShort { degree: usize, requested: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("segment starting at index {0} is not an isolated slope of the Newton polygon")]
    NotIsolated(usize),
    #[error("coefficient p_{0} is zero (the slope root is 0 itself)")]
    ZeroCoefficient(usize),
    #[error("coefficient of X^{0} is not in the valuation ring")]
    CoefficientNotIntegral(usize),
    #[error("base point a is not in the valuation ring")]
    PointNotIntegral,
    #[error("P(a) not in maximal ideal")]
    ValueNotInMaximalIdeal,
    #[error("P'(a) is not a unit")]
    DerivativeNotUnit,
    #[error("not a special polynomial: {0}")]
    NotSpecial(String),
    #[error("towers have different bottom fields (p = {left} and p = {right})")]
    BottomFieldMismatch { left: u64, right: u64 },
    #[error("element refers to level {level} but the tower has depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
