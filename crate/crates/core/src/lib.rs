//! Exact generalized binomial coefficients, truncated formal power series over
//! the rationals, and multi-route verification of the binomial convolution
//! identity together with its logarithmic limiting family.
//!
//! Every value is an exact [`Rational`]; nothing in this crate touches floating
//! point.

pub mod binomial;
pub mod cli;
pub mod expr;
pub mod identities;
pub mod series;

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub use binomial::{binom, complement, harmonic, BinomialError, BinomialSymbol};
pub use identities::{IdentityError, IdentityKind, IdentityReport};
pub use series::{PowerSeries, SeriesError, Sign};

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `numer / denom` in lowest terms. Panics when `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
