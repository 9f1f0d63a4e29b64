//! Exact computations in the henselization of a valued field.
//!
//! Every algorithm here is *uniform* in the base valued field: it only uses
//! field arithmetic together with the two predicates `x = 0` and
//! `v(x) >= v(y)`. The concrete base is `Q` with a p-adic valuation
//! ([`PAdicRationals`]); extensions by special zeros are stacked into a
//! [`Tower`], which implements the same [`ValuedField`] interface, so the
//! same algorithms run at every level.
//!
//! Module map:
//!
//! * [`field`], [`poly`], [`matrix`]: exact arithmetic substrate.
//! * [`value`]: the value group (divisible closure `Q`) plus infinity.
//! * [`valued`]: the valued-field interface and the p-adic base instance.
//! * [`newton`]: Newton polygons and root valuations.
//! * [`hensel`]: Hensel codes, special polynomials and the Newton-Hensel
//!   transforms that turn an isolated slope into a special zero.
//! * [`henselization`]: immediate descriptions of `Q(beta)` and towers.
//! * [`oracle`]: an independent modular Hensel-lifting backend used to
//!   cross-check results.
#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
pub mod hensel;
pub mod henselization;
pub mod matrix;
pub mod newton;
pub mod oracle;
pub mod poly;
pub mod value;
pub mod valued;

pub use error::Error;
pub use field::{Field, Rational, Rationals};
pub use hensel::{HenselChain, HenselCode, MobiusForm, SpecialOutcome, SpecialPoly};
pub use henselization::{Element, ImmediateDescription, Tower};
pub use matrix::Matrix;
pub use newton::{NewtonPolygon, RootValuations};
pub use poly::Poly;
pub use value::Val;
pub use valued::{PAdicRationals, ValuedField};
