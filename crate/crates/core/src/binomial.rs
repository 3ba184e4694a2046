//! Generalized binomial coefficients and harmonic numbers.
//!
//! `binom(p, q)` is the coefficient of `x^q` in `(1 + x)^p` for any rational
//! `p` and integer `q`:
//!
//! ```text
//! binom(p, q) = p/1 * (p-1)/2 * ... * (p-q+1)/q     q > 0
//!             = 1                                    q = 0
//!             = 0                                    q < 0
//! ```
//!
//! The complement rewrite `binom(p, q) = binom(p, p - q)` only holds when `p`
//! is a nonnegative integer, so it is exposed as a checked operation
//! ([`complement`]) and never applied implicitly.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error(
        "complement rule needs a nonnegative integer upper index and 0 <= lower <= upper, \
         got binom({upper}, {lower})"
    )]
    ComplementUndefined { upper: Rational, lower: i64 },
    #[error("harmonic number of negative index {0}")]
    NegativeHarmonic(i64),
}

/// The symbol `binom(upper, lower)`, kept unevaluated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialSymbol {
    pub upper: Rational,
    pub lower: i64,
}

impl BinomialSymbol {
    pub fn new(upper: Rational, lower: i64) -> Self {
        BinomialSymbol { upper, lower }
    }

    pub fn value(&self) -> Rational {
        binom(&self.upper, self.lower)
    }
}

impl fmt::Display for BinomialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "binom({}, {})", self.upper, self.lower)
    }
}

/// Returns `upper` as a nonnegative machine integer, if it is one.
fn as_natural(upper: &Rational) -> Option<u64> {
    if upper.is_integer() && !upper.is_negative() {
        upper.numer().to_u64()
    } else {
        None
    }
}

/// Generalized binomial coefficient. Total: negative `lower` yields zero.
pub fn binom(upper: &Rational, lower: i64) -> Rational {
    if lower < 0 {
        return Rational::zero();
    }
    // The product hits the factor (upper - upper) = 0 here; skip the walk.
    if let Some(n) = as_natural(upper) {
        if lower as u64 > n {
            return Rational::zero();
        }
    }
    let mut acc = Rational::one();
    let mut top = upper.clone();
    for i in 1..=lower {
        acc = acc * &top / Rational::from_integer(i.into());
        top -= Rational::one();
    }
    acc
}

/// `binom(n, k)` for machine integers.
pub fn binom_int(n: i64, k: i64) -> Rational {
    binom(&Rational::from_integer(n.into()), k)
}

/// Rewrites `binom(p, q)` as `binom(p, p - q)`.
///
/// Rejected unless `p` is a nonnegative integer and `0 <= q <= p`; outside
/// that range the two symbols take different values.
pub fn complement(sym: &BinomialSymbol) -> Result<BinomialSymbol, BinomialError> {
    let undefined = || BinomialError::ComplementUndefined {
        upper: sym.upper.clone(),
        lower: sym.lower,
    };
    let n = as_natural(&sym.upper)
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(undefined)?;
    if sym.lower < 0 || sym.lower > n {
        return Err(undefined());
    }
    Ok(BinomialSymbol::new(sym.upper.clone(), n - sym.lower))
}

/// `1 + 1/2 + ... + 1/n`, with `harmonic(0) = 0`.
pub fn harmonic(n: i64) -> Result<Rational, BinomialError> {
    if n < 0 {
        return Err(BinomialError::NegativeHarmonic(n));
    }
    Ok((1..=n).fold(Rational::zero(), |acc, k| {
        acc + Rational::new(1.into(), k.into())
    }))
}
