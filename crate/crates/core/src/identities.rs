//! Multi-route evaluation of the binomial convolution identity
//!
//! ```text
//! sum_k binom(m, k) binom(n, c + k) = binom(m + n, n - c)
//! ```
//!
//! and of its logarithmic (`m -> 0`) companion, the dual-series identity
//!
//! ```text
//! sum_{k>=1} (-1)^(k+1)/k binom(n, c + k) = sum_{l>=1} 1/l binom(n - l, n - l - c)
//! ```
//!
//! Each identity is computed along independent routes (finite sum, closed form,
//! power series coefficient) and a report records whether they agree exactly.
//! All summation bounds come from the vanishing rules of [`binom`], so no loop
//! runs "until the terms vanish".

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::binomial::{binom, binom_int, harmonic};
use crate::series::{PowerSeries, Sign};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("n must be a nonnegative integer, got {0}")]
    NegativeN(i64),
    #[error("c must be a nonnegative integer for the convolution identity, got {0}")]
    NegativeC(i64),
    #[error("truncation order {order} is below the requested coefficient {n}")]
    OrderTooSmall { order: usize, n: i64 },
    #[error("no closed form for the logarithmic case with c = {0}; only c <= 1 has one")]
    NoClosedForm(i64),
}

/// Which identity a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Vandermonde,
    LogDual,
    LogClosedC0,
    LogClosedC1,
    LogClosedNegative,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Vandermonde => "vandermonde",
            IdentityKind::LogDual => "log_dual",
            IdentityKind::LogClosedC0 => "log_closed_c0",
            IdentityKind::LogClosedC1 => "log_closed_c1",
            IdentityKind::LogClosedNegative => "log_closed_negative",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identity families selectable for a sweep. `LogClosed` picks the concrete
/// [`IdentityKind`] from `c` at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Vandermonde,
    LogDual,
    LogClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Sum,
    Closed,
    Series,
    Lhs,
    Rhs,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Sum => "sum",
            Route::Closed => "closed",
            Route::Series => "series",
            Route::Lhs => "lhs",
            Route::Rhs => "rhs",
        }
    }
}

/// Symbols consumed by one evaluation. `m` is absent for the logarithmic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub m: Option<Rational>,
    pub n: i64,
    pub c: i64,
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        if let Some(m) = &self.m {
            map.serialize_entry("m", &m.to_string())?;
        }
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("c", &self.c)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub params: Params,
    /// Route values in evaluation order.
    pub routes: Vec<(Route, Rational)>,
    pub verdict: bool,
    pub notes: Vec<String>,
}

impl IdentityReport {
    fn new(identity: IdentityKind, params: Params, routes: Vec<(Route, Rational)>) -> Self {
        let verdict = routes.windows(2).all(|w| w[0].1 == w[1].1);
        IdentityReport {
            identity,
            params,
            routes,
            verdict,
            notes: Vec::new(),
        }
    }

    pub fn route(&self, route: Route) -> Option<&Rational> {
        self.routes
            .iter()
            .find(|(r, _)| *r == route)
            .map(|(_, v)| v)
    }
}

struct RouteMap<'a>(&'a [(Route, Rational)]);

impl Serialize for RouteMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (route, value) in self.0 {
            map.serialize_entry(route.name(), &value.to_string())?;
        }
        map.end()
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IdentityReport", 5)?;
        st.serialize_field("identity", &self.identity)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("routes", &RouteMap(&self.routes))?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn check_n(n: i64) -> Result<(), IdentityError> {
    if n < 0 {
        Err(IdentityError::NegativeN(n))
    } else {
        Ok(())
    }
}

fn check_nc(n: i64, c: i64) -> Result<(), IdentityError> {
    check_n(n)?;
    if c < 0 {
        return Err(IdentityError::NegativeC(c));
    }
    Ok(())
}

/// `sum_{k=0}^{n-c} binom(m, k) binom(n, c + k)`; empty (zero) when `c > n`.
pub fn vandermonde_sum(m: &Rational, n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_nc(n, c)?;
    Ok((0..=n - c).fold(Rational::zero(), |acc, k| {
        acc + binom(m, k) * binom_int(n, c + k)
    }))
}

/// `binom(m + n, n - c)`.
pub fn vandermonde_closed(m: &Rational, n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_nc(n, c)?;
    Ok(binom(&(m + int(n)), n - c))
}

/// Coefficient of `z^n` in `z^c / (1 - z)^(m + c + 1)`, expanded to `order`.
pub fn vandermonde_series_route(
    m: &Rational,
    n: i64,
    c: i64,
    order: usize,
) -> Result<Rational, IdentityError> {
    check_nc(n, c)?;
    if (order as i64) < n {
        return Err(IdentityError::OrderTooSmall { order, n });
    }
    let exponent = -(m + int(c) + Rational::one());
    let v = PowerSeries::binomial_series(&exponent, order, Sign::Minus)
        .shift(c)
        .expect("c is nonnegative");
    Ok(v.coefficient(n).expect("n <= order").clone())
}

/// Alternating side: `sum_{k>=1} (-1)^(k+1)/k binom(n, c + k)`, over the `k`
/// with `0 <= c + k <= n`.
pub fn log_lhs(n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_n(n)?;
    let first = 1.max(-c);
    Ok((first..=n - c).fold(Rational::zero(), |acc, k| {
        let term = binom_int(n, c + k) / int(k);
        if k % 2 == 1 {
            acc + term
        } else {
            acc - term
        }
    }))
}

/// Harmonic side: `sum_{l=1}^{n-c} 1/l binom(n - l, n - l - c)`. Beyond
/// `l = n - c` every lower index is negative.
pub fn log_rhs(n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_n(n)?;
    Ok((1..=n - c).fold(Rational::zero(), |acc, l| {
        acc + binom_int(n - l, n - l - c) / int(l)
    }))
}

/// Coefficient of `z^n` in `-z^c log(1 - z) / (1 - z)^(c + 1)`.
///
/// For `c < -1` the prefactor `(1 - z)^(-c-1)` is a polynomial and the
/// coefficient is still well defined, since `-log(1 - z)` absorbs one power
/// of `z` and the polynomial degree covers the rest.
pub fn log_series_route(n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_n(n)?;
    let index = n - c;
    if index < 0 {
        return Ok(Rational::zero());
    }
    let order = index as usize;
    let prefactor = PowerSeries::binomial_series(&-int(c + 1), order, Sign::Minus);
    let product = &PowerSeries::log_geometric(order) * &prefactor;
    Ok(product.coefficient(index).expect("index == order").clone())
}

/// `c = 1` rewritten as `sum_{l=1}^{n-1} (n/l - 1)`.
pub fn log_c1_decomposed(n: i64) -> Result<Rational, IdentityError> {
    check_n(n)?;
    Ok((1..n).fold(Rational::zero(), |acc, l| {
        acc + Rational::new(n.into(), l.into()) - Rational::one()
    }))
}

/// Closed form of the logarithmic identity for `c <= 0`:
/// `H_n` at `c = 0` and `(-1)^(d-1) (d-1)! / ((n+1)(n+2)...(n+d))` at `c = -d`.
///
/// The negative family is established for `d <= 4`; larger `d` extends the
/// same pattern (see [`is_generalized`]).
pub fn log_closed(n: i64, c: i64) -> Result<Rational, IdentityError> {
    check_n(n)?;
    if c > 0 {
        return Err(IdentityError::NoClosedForm(c));
    }
    if c == 0 {
        return Ok(harmonic(n).expect("n checked"));
    }
    let d = -c;
    let factorial: BigInt = (1..d).map(BigInt::from).product();
    let denom: BigInt = (1..=d).map(|i| BigInt::from(n + i)).product();
    let value = Rational::new(factorial, denom);
    Ok(if d % 2 == 0 { -value } else { value })
}

/// True where [`log_closed`] extrapolates past `c = -4`.
pub fn is_generalized(c: i64) -> bool {
    c < -4
}

pub const GENERALIZED_NOTE: &str = "closed form generalized beyond c = -4";

/// All three routes of the convolution identity at one point.
pub fn vandermonde_report(m: &Rational, n: i64, c: i64) -> Result<IdentityReport, IdentityError> {
    let routes = vec![
        (Route::Sum, vandermonde_sum(m, n, c)?),
        (Route::Closed, vandermonde_closed(m, n, c)?),
        (
            Route::Series,
            vandermonde_series_route(m, n, c, n.max(0) as usize)?,
        ),
    ];
    let params = Params {
        m: Some(m.clone()),
        n,
        c,
    };
    Ok(IdentityReport::new(
        IdentityKind::Vandermonde,
        params,
        routes,
    ))
}

/// Both sides of the dual-series identity plus the series coefficient.
pub fn log_dual_report(n: i64, c: i64) -> Result<IdentityReport, IdentityError> {
    let routes = vec![
        (Route::Lhs, log_lhs(n, c)?),
        (Route::Rhs, log_rhs(n, c)?),
        (Route::Series, log_series_route(n, c)?),
    ];
    Ok(IdentityReport::new(
        IdentityKind::LogDual,
        Params { m: None, n, c },
        routes,
    ))
}

/// The dual-series identity checked against its closed form for `c <= 1`.
pub fn log_closed_report(n: i64, c: i64) -> Result<IdentityReport, IdentityError> {
    let (kind, closed) = match c {
        0 => (IdentityKind::LogClosedC0, log_closed(n, c)?),
        1 => (IdentityKind::LogClosedC1, log_c1_decomposed(n)?),
        c if c < 0 => (IdentityKind::LogClosedNegative, log_closed(n, c)?),
        c => return Err(IdentityError::NoClosedForm(c)),
    };
    let routes = vec![
        (Route::Lhs, log_lhs(n, c)?),
        (Route::Rhs, log_rhs(n, c)?),
        (Route::Closed, closed),
        (Route::Series, log_series_route(n, c)?),
    ];
    let mut report = IdentityReport::new(kind, Params { m: None, n, c }, routes);
    if is_generalized(c) {
        report.notes.push(GENERALIZED_NOTE.to_owned());
    }
    Ok(report)
}

/// Parameter grid for a sweep. `m` is ignored by the logarithmic families.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamGrid {
    pub m: Vec<Rational>,
    pub n: Vec<i64>,
    pub c: Vec<i64>,
}

/// Evaluates every grid point (in parallel) and returns the reports in grid
/// order: `m` outermost, then `n`, then `c`.
pub fn verify(family: Family, grid: &ParamGrid) -> Result<Vec<IdentityReport>, IdentityError> {
    match family {
        Family::Vandermonde => {
            let points: Vec<_> = grid
                .m
                .iter()
                .flat_map(|m| {
                    grid.n
                        .iter()
                        .flat_map(move |&n| grid.c.iter().map(move |&c| (m, n, c)))
                })
                .collect();
            points
                .into_par_iter()
                .map(|(m, n, c)| vandermonde_report(m, n, c))
                .collect()
        }
        Family::LogDual | Family::LogClosed => {
            let points: Vec<_> = grid
                .n
                .iter()
                .flat_map(|&n| grid.c.iter().map(move |&c| (n, c)))
                .collect();
            points
                .into_par_iter()
                .map(|(n, c)| {
                    if family == Family::LogDual {
                        log_dual_report(n, c)
                    } else {
                        log_closed_report(n, c)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_sum(&rat(3), 4, 0).unwrap(), rat(35));
        assert_eq!(vandermonde_closed(&rat(3), 4, 0).unwrap(), rat(35));
        assert_eq!(vandermonde_series_route(&rat(3), 4, 0, 4).unwrap(), rat(35));
        assert_eq!(vandermonde_sum(&ratio(2, 3), 3, 5).unwrap(), rat(0));
        assert_eq!(vandermonde_closed(&ratio(2, 3), 3, 5).unwrap(), rat(0));
        assert_eq!(vandermonde_sum(&rat(1), 2, 1).unwrap(), rat(3));
        assert_eq!(vandermonde_closed(&rat(1), 2, 1).unwrap(), rat(3));
        assert_eq!(vandermonde_sum(&ratio(1, 2), 2, 0).unwrap(), ratio(15, 8));
        assert_eq!(
            vandermonde_closed(&ratio(1, 2), 2, 0).unwrap(),
            ratio(15, 8)
        );
        assert_eq!(vandermonde_series_route(&rat(2), 3, 1, 3).unwrap(), rat(10));
    }

    #[test]
    fn vandermonde_m_zero_is_plain_binomial() {
        for n in 0..10 {
            for c in 0..10 {
                assert_eq!(vandermonde_closed(&rat(0), n, c).unwrap(), binom_int(n, c));
                assert_eq!(vandermonde_sum(&rat(0), n, c).unwrap(), binom_int(n, c));
            }
        }
    }

    #[test]
    fn series_route_lowest_power() {
        for m in [rat(0), rat(4), ratio(-7, 4), ratio(1, 2)] {
            for c in 0..5 {
                assert_eq!(
                    vandermonde_series_route(&m, c, c, c as usize + 3).unwrap(),
                    rat(1)
                );
            }
        }
    }

    #[test]
    fn vandermonde_rejections() {
        assert_eq!(
            vandermonde_sum(&rat(1), -1, 0),
            Err(IdentityError::NegativeN(-1))
        );
        assert_eq!(
            vandermonde_closed(&rat(1), 2, -1),
            Err(IdentityError::NegativeC(-1))
        );
        assert_eq!(
            vandermonde_series_route(&rat(1), 5, 0, 4),
            Err(IdentityError::OrderTooSmall { order: 4, n: 5 })
        );
    }

    #[test]
    fn log_examples() {
        assert_eq!(log_lhs(3, 0).unwrap(), ratio(11, 6));
        assert_eq!(log_lhs(6, 2).unwrap(), ratio(57, 4));
        assert_eq!(log_lhs(2, -2).unwrap(), ratio(-1, 12));
        assert_eq!(log_rhs(6, 2).unwrap(), ratio(57, 4));
        assert_eq!(log_rhs(3, 0).unwrap(), ratio(11, 6));
        for n in 0..12 {
            assert_eq!(log_rhs(n, -1).unwrap(), ratio(1, n + 1));
        }
        assert_eq!(log_rhs(3, 7).unwrap(), rat(0));
        assert_eq!(log_lhs(-1, 0), Err(IdentityError::NegativeN(-1)));
        assert_eq!(log_rhs(-2, 0), Err(IdentityError::NegativeN(-2)));
    }

    #[test]
    fn log_closed_examples() {
        assert_eq!(log_closed(2, -3).unwrap(), ratio(1, 30));
        assert_eq!(log_closed(0, 0).unwrap(), rat(0));
        assert_eq!(log_closed(5, -4).unwrap(), ratio(-6, 6 * 7 * 8 * 9));
        assert_eq!(log_closed(5, -4).unwrap(), log_lhs(5, -4).unwrap());
        assert_eq!(log_closed(1, -2).unwrap(), ratio(-1, 6));
        assert_eq!(log_closed(3, 1), Err(IdentityError::NoClosedForm(1)));
    }

    #[test]
    fn c1_decomposition() {
        for n in 1..=20 {
            assert_eq!(log_c1_decomposed(n).unwrap(), log_rhs(n, 1).unwrap());
        }
        assert_eq!(log_c1_decomposed(5).unwrap(), ratio(77, 12));
    }

    #[test]
    fn series_route_matches_sums() {
        for n in 0..=12 {
            for c in -6..=6 {
                assert_eq!(
                    log_series_route(n, c).unwrap(),
                    log_lhs(n, c).unwrap(),
                    "n={n} c={c}"
                );
            }
        }
    }

    #[test]
    fn verify_grid_order_and_verdicts() {
        let grid = ParamGrid {
            m: vec![
                rat(0),
                rat(1),
                rat(2),
                rat(3),
                rat(4),
                rat(5),
                ratio(1, 2),
                ratio(-1, 2),
                ratio(5, 3),
            ],
            n: (0..=12).collect(),
            c: (0..=6).collect(),
        };
        let reports = verify(Family::Vandermonde, &grid).unwrap();
        assert_eq!(reports.len(), 9 * 13 * 7);
        assert!(reports.iter().all(|r| r.verdict));
        assert_eq!(
            reports[0].params,
            Params {
                m: Some(rat(0)),
                n: 0,
                c: 0
            }
        );
        assert_eq!(
            reports[1].params,
            Params {
                m: Some(rat(0)),
                n: 0,
                c: 1
            }
        );
        assert_eq!(
            reports[7].params,
            Params {
                m: Some(rat(0)),
                n: 1,
                c: 0
            }
        );

        let grid = ParamGrid {
            m: vec![],
            n: (0..=15).collect(),
            c: (-5..=5).collect(),
        };
        let reports = verify(Family::LogDual, &grid).unwrap();
        assert_eq!(reports.len(), 16 * 11);
        assert!(reports.iter().all(|r| r.verdict));
    }

    #[test]
    fn verify_empty_grid() {
        let grid = ParamGrid::default();
        assert!(verify(Family::Vandermonde, &grid).unwrap().is_empty());
        assert!(verify(Family::LogDual, &grid).unwrap().is_empty());
        let grid = ParamGrid {
            m: vec![rat(1)],
            n: vec![],
            c: vec![0],
        };
        assert!(verify(Family::Vandermonde, &grid).unwrap().is_empty());
    }

    #[test]
    fn log_closed_family() {
        let grid = ParamGrid {
            m: vec![],
            n: (0..=6).collect(),
            c: vec![-6, -1, 0, 1],
        };
        let reports = verify(Family::LogClosed, &grid).unwrap();
        assert!(reports.iter().all(|r| r.verdict));
        assert_eq!(reports[0].identity, IdentityKind::LogClosedNegative);
        assert_eq!(reports[0].notes, vec![GENERALIZED_NOTE.to_owned()]);
        assert!(reports[1].notes.is_empty());
        assert_eq!(reports[2].identity, IdentityKind::LogClosedC0);
        assert_eq!(reports[3].identity, IdentityKind::LogClosedC1);
        let grid = ParamGrid {
            m: vec![],
            n: vec![3],
            c: vec![2],
        };
        assert_eq!(
            verify(Family::LogClosed, &grid),
            Err(IdentityError::NoClosedForm(2))
        );
    }

    #[test]
    fn report_verdict_tracks_routes() {
        let mut r = IdentityReport::new(
            IdentityKind::LogDual,
            Params {
                m: None,
                n: 1,
                c: 0,
            },
            vec![(Route::Lhs, rat(1)), (Route::Rhs, rat(2))],
        );
        assert!(!r.verdict);
        r = IdentityReport::new(
            r.identity,
            r.params,
            vec![(Route::Lhs, rat(1)), (Route::Rhs, rat(1))],
        );
        assert!(r.verdict);
        assert_eq!(r.route(Route::Rhs), Some(&rat(1)));
        assert_eq!(r.route(Route::Closed), None);
    }

    #[test]
    fn report_json_shape() {
        let r = vandermonde_report(&ratio(1, 2), 2, 0).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "identity": "vandermonde",
                "params": {"m": "1/2", "n": 2, "c": 0},
                "routes": {"sum": "15/8", "closed": "15/8", "series": "15/8"},
                "verdict": true,
                "notes": []
            })
        );
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.find("\"sum\"").unwrap() < text.find("\"closed\"").unwrap());
        let r = log_dual_report(3, 0).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["params"], serde_json::json!({"n": 3, "c": 0}));
        assert_eq!(v["routes"]["lhs"], "11/6");
    }
}
