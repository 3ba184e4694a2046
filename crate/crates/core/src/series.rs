//! Dense truncated power series over the rationals.
//!
//! A [`PowerSeries`] of order `N` stores the coefficients of `z^0 ..= z^N` and
//! knows nothing beyond that. Binary operations truncate to the smaller of the
//! two orders and the result records it; nothing is ever padded with zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::binomial::binom;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient {index} requested from a series truncated at order {order}")]
    OutOfRange { index: i64, order: usize },
    #[error("monomial shift by negative power {0}")]
    NegativeShift(i64),
    #[error("a power series needs at least one coefficient")]
    Empty,
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("series vanishes up to its truncation order {0}")]
    Vanishes(usize),
    #[error("dividing by z^{power} leaves a nonzero coefficient at z^{index}")]
    NotDivisible { power: usize, index: usize },
    #[error("{base}^({exponent}) is not rational")]
    IrrationalPower { base: String, exponent: String },
    #[error(
        "exponent {exponent} applied to a series starting at z^{valuation} is not a power series"
    )]
    NonIntegralPower { exponent: String, valuation: usize },
}

/// Sign of the variable in `(1 + z)^m` versus `(1 - z)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            order,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series `z` (or `0` at order zero).
    pub fn variable(order: usize) -> Self {
        Self::monomial(1, order)
    }

    /// `z^power`, which is the zero series when `power > order`.
    pub fn monomial(power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = Rational::one();
        }
        s
    }

    /// Order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(PowerSeries {
            order: coeffs.len() - 1,
            coeffs,
        })
    }

    /// `1 / (1 - z) = 1 + z + z^2 + ...`
    pub fn geometric(order: usize) -> Self {
        PowerSeries {
            order,
            coeffs: vec![Rational::one(); order + 1],
        }
    }

    /// Expansion of `(1 + z)^m`, or `(1 - z)^m` for [`Sign::Minus`]; the
    /// coefficient of `z^k` is `binom(m, k)` times the sign to the `k`.
    pub fn binomial_series(m: &Rational, order: usize, sign: Sign) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                let c = binom(m, k as i64);
                if sign == Sign::Minus && k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        PowerSeries { order, coeffs }
    }

    /// `-log(1 - z) = z + z^2/2 + z^3/3 + ...`
    pub fn log_geometric(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    Rational::new(BigInt::one(), BigInt::from(k))
                }
            })
            .collect();
        PowerSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^n`. Indices outside `0..=order` are an error, never zero.
    pub fn coefficient(&self, n: i64) -> Result<&Rational, SeriesError> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .ok_or(SeriesError::OutOfRange {
                index: n,
                order: self.order,
            })
    }

    /// Drops every coefficient above `order`. Raising the order is impossible,
    /// so an `order` above the current one leaves the series unchanged.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        PowerSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient, if any is stored.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplies by `z^power`, keeping the order; high coefficients fall off.
    pub fn shift(&self, power: i64) -> Result<Self, SeriesError> {
        let p = usize::try_from(power).map_err(|_| SeriesError::NegativeShift(power))?;
        let mut out = Self::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_add(p) {
                Some(j) if j <= self.order => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// Divides by `z^power`. The low `power` coefficients must be zero and the
    /// order drops by `power`, since the top coefficients become unknown.
    pub fn unshift(&self, power: usize) -> Result<Self, SeriesError> {
        if power > self.order {
            return Err(SeriesError::Vanishes(self.order));
        }
        if let Some(index) = self.coeffs[..power].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible { power, index });
        }
        Self::from_coeffs(self.coeffs[power..].to_vec())
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for n in 1..=self.order {
            let s = (1..=n).fold(Rational::zero(), |acc, k| {
                acc + &self.coeffs[k] * &out[n - k]
            });
            out.push(-s * &inv0);
        }
        Ok(PowerSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// Integer power by repeated squaring; negative powers go through
    /// [`reciprocal`](Self::reciprocal).
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `self^exponent` for a series with nonzero constant term `a0`, where
    /// `a0^exponent` must itself be rational.
    ///
    /// Uses the power recurrence `n a0 h_n = sum_{k=1..n} ((m+1)k - n) a_k h_{n-k}`.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Self, SeriesError> {
        if exponent.is_integer() {
            if let Some(k) = exponent.numer().to_i64() {
                return self.pow_int(k);
            }
        }
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let h0 = rational_power(a0, exponent).ok_or_else(|| SeriesError::IrrationalPower {
            base: a0.to_string(),
            exponent: exponent.to_string(),
        })?;
        let m1 = exponent + Rational::one();
        let mut h: Vec<Rational> = Vec::with_capacity(self.order + 1);
        h.push(h0);
        for n in 1..=self.order {
            let nr = Rational::from_integer(BigInt::from(n));
            let mut s = Rational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = &m1 * Rational::from_integer(BigInt::from(k)) - &nr;
                s += w * &self.coeffs[k] * &h[n - k];
            }
            h.push(s / (nr * a0));
        }
        Ok(PowerSeries {
            order: self.order,
            coeffs: h,
        })
    }
}

/// Exact `base^exponent` when the result is rational.
fn rational_power(base: &Rational, exponent: &Rational) -> Option<Rational> {
    let q = exponent.denom().to_u32()?;
    let p = exponent.numer().to_i32()?;
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = if x.is_negative() {
            if q % 2 == 0 {
                return None;
            }
            -(-x).nth_root(q)
        } else {
            x.nth_root(q)
        };
        (num_traits::pow(r.clone(), q as usize) == *x).then_some(r)
    };
    let r = Rational::new(root(base.numer())?, root(base.denom())?);
    Some(powi(&r, p))
}

fn powi(r: &Rational, p: i32) -> Rational {
    let mag = num_traits::pow(r.clone(), p.unsigned_abs() as usize);
    if p < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Coefficient of `x^n` in `x^p / (1 - x)^(q + 1)`, evaluated as
/// `binom(n - p + q, n - p)`. Zero when `n < p`. The lower index is kept as
/// `n - p` so the formula stays valid for rational `q`.
pub fn lemma_coefficient(p: i64, q: &Rational, n: i64) -> Rational {
    let lower = n - p;
    let upper = q + Rational::from_integer(BigInt::from(lower));
    binom(&upper, lower)
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "z".to_owned(),
                _ => format!("z^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&var)?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order.min(rhs.order);
        PowerSeries {
            order,
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order.min(rhs.order);
        PowerSeries {
            order,
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { order, coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}
