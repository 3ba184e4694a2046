use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::ast::Expr;
use crate::series::{PowerSeries, SeriesError};
use crate::Rational;

/// Cap on the internal working order used to absorb precision lost to
/// divisions by powers of `z`.
const MAX_WORKING_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("cannot expand `{expr}`: {source}")]
    Series { expr: String, source: SeriesError },
    #[error("cannot expand `{0}` to the requested order")]
    Precision(String),
}

fn at(expr: &Expr) -> impl FnOnce(SeriesError) -> EvalError + '_ {
    move |source| EvalError::Series {
        expr: expr.to_string(),
        source,
    }
}

/// Expands `expr` as a power series in `z` truncated at `order`.
///
/// Quotients and fractional powers are allowed whenever the offending base is
/// `z^v` times a series with nonzero constant term, so forms like
/// `z^c/(1-z)^(c+1)` or `z^2/z` are fine while `1/z` is not.
pub fn evaluate(expr: &Expr, order: usize) -> Result<PowerSeries, EvalError> {
    let mut working = order;
    loop {
        match expand(expr, working) {
            Ok(s) if s.order() >= order => return Ok(s.truncate(order)),
            Ok(s) => working += order - s.order(),
            // The denominator may only look zero because it is truncated too early.
            Err(EvalError::Series {
                source: SeriesError::Vanishes(_),
                ..
            }) if working < MAX_WORKING_ORDER => {
                working = (working * 2).clamp(8, MAX_WORKING_ORDER.max(order))
            }
            Err(e) => return Err(e),
        }
        if working > MAX_WORKING_ORDER.max(order) {
            return Err(EvalError::Precision(expr.to_string()));
        }
    }
}

fn expand(expr: &Expr, order: usize) -> Result<PowerSeries, EvalError> {
    Ok(match expr {
        Expr::Literal(r) => PowerSeries::constant(r.clone(), order),
        Expr::Var => PowerSeries::variable(order),
        Expr::LogGeom => PowerSeries::log_geometric(order),
        Expr::Neg(a) => -expand(a, order)?,
        Expr::Add(a, b) => expand(a, order)? + expand(b, order)?,
        Expr::Sub(a, b) => expand(a, order)? - expand(b, order)?,
        Expr::Mul(a, b) => expand(a, order)? * expand(b, order)?,
        Expr::Div(a, b) => {
            let num = expand(a, order)?;
            let den = expand(b, order)?;
            let v = den
                .valuation()
                .ok_or(SeriesError::Vanishes(den.order()))
                .map_err(at(expr))?;
            let num = num.unshift(v).map_err(at(expr))?;
            let den = den.unshift(v).map_err(at(expr))?;
            num * den.reciprocal().map_err(at(expr))?
        }
        Expr::Pow(base, e) => {
            let b = expand(base, order)?;
            if e.is_integer() && !e.is_negative() {
                let k = e
                    .numer()
                    .to_i64()
                    .ok_or(EvalError::Precision(expr.to_string()))?;
                return b.pow_int(k).map_err(at(expr));
            }
            let v = b
                .valuation()
                .ok_or(SeriesError::Vanishes(b.order()))
                .map_err(at(expr))?;
            if v == 0 {
                return b.pow_rational(e).map_err(at(expr));
            }
            // (z^v g)^e = z^(v e) g^e, which needs v*e to be a nonnegative integer.
            let lead = e * Rational::from_integer(BigInt::from(v));
            let shift = (lead.is_integer() && !lead.is_negative())
                .then(|| lead.numer().to_usize())
                .flatten()
                .ok_or_else(|| SeriesError::NonIntegralPower {
                    exponent: e.to_string(),
                    valuation: v,
                })
                .map_err(at(expr))?;
            let g = b
                .unshift(v)
                .map_err(at(expr))?
                .pow_rational(e)
                .map_err(at(expr))?;
            let mut coeffs = vec![Rational::zero(); shift];
            coeffs.extend_from_slice(g.coeffs());
            PowerSeries::from_coeffs(coeffs).map_err(at(expr))?
        }
    })
}
