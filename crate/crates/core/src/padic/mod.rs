//! Exact p-adic arithmetic over `Q` and `Q(sqrt p)`.
//!
//! Every quantity is exact: valuations are half-integers, absolute values
//! are carried as exponents of `p`, and field elements are pairs of reduced
//! rationals `a + b*sqrt(p)`.

mod context;
mod element;
mod exponent;
mod parse;
mod point;

use thiserror::Error;

pub use context::{is_prime, FieldContext};
pub(crate) use element::pow_p;
pub use element::{rational_valuation, residue_of_rational, FieldElement};
pub use exponent::{HalfInt, Norm, Valuation};
pub use parse::parse_rational;
pub use point::{chordal, ProjPoint, ResidueValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ramification index must be 1 or 2, got {0}")]
    InvalidRamification(u8),
    #[error("values from different primes cannot be combined (p={left} vs p={right})")]
    ContextMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the point [0:0] is not on the projective line")]
    DegeneratePoint,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
