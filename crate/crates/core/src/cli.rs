//! Command-line front end.
//!
//! ```text
//! uncia coeff <expr> --n <int> [--order <int>] [--json]
//! uncia verify <vandermonde|log-dual|log-closed> [--m <grid>] --n <grid> --c <grid> [--json]
//! uncia table euler --case <c0|c1|c2|cm1|cm2|cm3|cm4> --n-max <int> [--csv|--json]
//! ```
//!
//! Grids are comma-separated lists of values and inclusive integer ranges
//! `a..b`, e.g. `0..5,1/2,-7/4`. Exit status is 0 on success, 1 when any
//! verification fails and 2 on usage, parse or evaluation errors.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::expr::{evaluate, parse};
use crate::identities::{self, Family, IdentityReport, ParamGrid};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Extra truncation order beyond the requested coefficient.
pub const DEFAULT_ORDER_MARGIN: u64 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "uncia",
    version,
    about = "Exact binomial coefficients, power series and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the coefficient of z^n in the expansion of an expression.
    Coeff(CoeffArgs),
    /// Check an identity over a parameter grid by independent routes.
    Verify(VerifyArgs),
    /// Reproduce a table of worked examples.
    Table(TableArgs),
}

#[derive(Debug, Args)]
struct CoeffArgs {
    expr: String,
    #[arg(long)]
    n: u64,
    /// Truncation order [default: n + 8]
    #[arg(long)]
    order: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IdentityArg {
    Vandermonde,
    LogDual,
    LogClosed,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    identity: IdentityArg,
    /// Values of m (ignored by the logarithmic identities)
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableName {
    Euler,
}

#[derive(Debug, Args)]
struct TableArgs {
    table: TableName,
    #[arg(long = "case")]
    case: Case,
    #[arg(long)]
    n_max: u64,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
}

/// A worked case of the logarithmic identity, named by its `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    C0,
    C1,
    C2,
    Cm1,
    Cm2,
    Cm3,
    Cm4,
}

impl Case {
    pub fn c(self) -> i64 {
        match self {
            Case::C0 => 0,
            Case::C1 => 1,
            Case::C2 => 2,
            Case::Cm1 => -1,
            Case::Cm2 => -2,
            Case::Cm3 => -3,
            Case::Cm4 => -4,
        }
    }

    /// First tabulated `n`.
    pub fn first_n(self) -> i64 {
        match self {
            Case::Cm3 | Case::Cm4 => 0,
            _ => 1,
        }
    }
}

/// One row of a worked-example table. `closed` is absent for `c >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: i64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub closed: Option<Rational>,
}

impl TableRow {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs && self.closed.as_ref().is_none_or(|c| *c == self.lhs)
    }
}

#[derive(Serialize)]
struct JsonRow {
    n: i64,
    lhs: String,
    rhs: String,
    closed: Option<String>,
}

/// Rows `first_n ..= n_max` for `case`.
pub fn euler_table(case: Case, n_max: i64) -> Vec<TableRow> {
    let c = case.c();
    (case.first_n()..=n_max)
        .map(|n| {
            let closed = match case {
                Case::C1 => Some(identities::log_c1_decomposed(n)),
                Case::C2 => None,
                _ => Some(identities::log_closed(n, c)),
            };
            TableRow {
                n,
                lhs: identities::log_lhs(n, c).expect("n >= 0"),
                rhs: identities::log_rhs(n, c).expect("n >= 0"),
                closed: closed.map(|r| r.expect("n >= 0 and c <= 1")),
            }
        })
        .collect()
}

/// Renders rows as CSV with header `n,lhs,rhs,closed`.
pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,lhs,rhs,closed\n");
    for r in rows {
        let closed = r
            .closed
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", r.n, r.lhs, r.rhs, closed));
    }
    out
}

/// Parses a comma-separated list of integers and inclusive `a..b` ranges.
pub fn parse_int_grid(s: &str) -> Result<Vec<i64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if let Some((a, b)) = item.split_once("..") {
            let a: i64 = a
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {item:?}"))?;
            let b: i64 = b
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {item:?}"))?;
            if a > b {
                return Err(format!("empty range {item:?}"));
            }
            out.extend(a..=b);
        } else {
            out.push(
                item.parse()
                    .map_err(|_| format!("not an integer: {item:?}"))?,
            );
        }
    }
    Ok(out)
}

/// Like [`parse_int_grid`] but single items may be rationals `p/q`.
pub fn parse_rational_grid(s: &str) -> Result<Vec<Rational>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if item.contains("..") {
            out.extend(
                parse_int_grid(item)?
                    .into_iter()
                    .map(|k| Rational::from_integer(k.into())),
            );
        } else {
            let r = Rational::from_str(item).map_err(|_| format!("not a rational: {item:?}"))?;
            out.push(r);
        }
    }
    Ok(out)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Coeff(a) => coeff(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Table(a) => table(a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn io(e: std::io::Error) -> String {
    format!("write failed: {e}")
}

fn coeff(a: CoeffArgs, out: &mut dyn Write) -> CmdResult {
    let order = a.order.unwrap_or(a.n + DEFAULT_ORDER_MARGIN);
    if order < a.n {
        return Err(format!("--order {order} is below --n {}", a.n));
    }
    let expr = parse(&a.expr).map_err(|e| format!("parse error: {e}"))?;
    let order = usize::try_from(order).map_err(|_| "--order too large".to_owned())?;
    let series = evaluate(&expr, order).map_err(|e| e.to_string())?;
    let n = i64::try_from(a.n).map_err(|_| "--n too large".to_owned())?;
    let value = series.coefficient(n).map_err(|e| e.to_string())?;
    if a.json {
        let doc = serde_json::json!({
            "expr": expr.to_string(),
            "n": n,
            "order": order,
            "coefficient": value.to_string(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
    } else {
        writeln!(out, "{value}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn plain_report(r: &IdentityReport) -> String {
    let mut line = r.identity.name().to_owned();
    if let Some(m) = &r.params.m {
        line.push_str(&format!(" m={m}"));
    }
    line.push_str(&format!(" n={} c={}", r.params.n, r.params.c));
    for (route, value) in &r.routes {
        line.push_str(&format!(" {}={value}", route.name()));
    }
    line.push_str(if r.verdict { " ok" } else { " FAIL" });
    for note in &r.notes {
        line.push_str(&format!(" [{note}]"));
    }
    line
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let family = match a.identity {
        IdentityArg::Vandermonde => Family::Vandermonde,
        IdentityArg::LogDual => Family::LogDual,
        IdentityArg::LogClosed => Family::LogClosed,
    };
    let m = match (&a.m, family) {
        (Some(m), _) => parse_rational_grid(m)?,
        (None, Family::Vandermonde) => return Err("vandermonde needs --m".to_owned()),
        (None, _) => Vec::new(),
    };
    let grid = ParamGrid {
        m,
        n: parse_int_grid(&a.n)?,
        c: parse_int_grid(&a.c)?,
    };
    let reports = identities::verify(family, &grid).map_err(|e| e.to_string())?;
    let failed = reports.iter().filter(|r| !r.verdict).count();
    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&reports).expect("json")
        )
        .map_err(io)?;
    } else {
        for r in &reports {
            writeln!(out, "{}", plain_report(r)).map_err(io)?;
        }
        writeln!(out, "{} checked, {} failed", reports.len(), failed).map_err(io)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn table(a: TableArgs, out: &mut dyn Write) -> CmdResult {
    let TableName::Euler = a.table;
    let n_max = i64::try_from(a.n_max).map_err(|_| "--n-max too large".to_owned())?;
    let rows = euler_table(a.case, n_max);
    let text = if a.csv {
        render_csv(&rows)
    } else if a.json {
        let json: Vec<JsonRow> = rows
            .iter()
            .map(|r| JsonRow {
                n: r.n,
                lhs: r.lhs.to_string(),
                rhs: r.rhs.to_string(),
                closed: r.closed.as_ref().map(ToString::to_string),
            })
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&json).expect("json"))
    } else {
        let mut s = String::from("n lhs rhs closed\n");
        for r in &rows {
            let closed = r
                .closed
                .as_ref()
                .map_or("-".to_owned(), ToString::to_string);
            s.push_str(&format!("{} {} {} {}\n", r.n, r.lhs, r.rhs, closed));
        }
        s
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if rows.iter().all(TableRow::agrees) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
