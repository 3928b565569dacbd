//! Extended-precision real and complex arithmetic.

mod complex;
mod context;
mod elem;
mod real;

pub use complex::Complex;
pub use context::{make_context, PrecisionContext, DEFAULT_GUARD, MAX_DIGITS, MIN_DIGITS, MIN_GUARD};
pub use elem::{elem, elem_real, pi_const, Elem};
pub use real::Real;

/// Exact rational with a positive denominator in lowest terms.
pub type Rational = num_rational::BigRational;
