//! Computing inside the henselization.
//!
//! [`describe`] holds the algorithm that decides `Q(beta) = 0`, computes
//! `v(Q(beta))` and an immediate description of `Q(beta)` for the special
//! zero `beta` of a special polynomial, using only computations in the base
//! field. [`tower`] stacks special-zero extensions into a field that again
//! implements [`ValuedField`](crate::ValuedField).

pub mod describe;
pub mod tower;

pub use describe::{
    char_poly_of_values, choose_exponent, immediate_description, immediate_description_traced, is_zero_at,
    valuation_at, DescriptionTrace, ImmediateDescription,
};
pub use tower::{Element, Fraction, HenselZero, Tower};
