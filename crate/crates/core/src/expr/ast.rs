use std::fmt;

use num_traits::Signed;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Literal(Rational),
    /// The series variable `z`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    /// `log(1/(1-z))`, equivalently `-log(1-z)`.
    LogGeom,
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Literal(Rational::from_integer(n.into()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, exponent: Rational) -> Expr {
        Expr::Pow(Box::new(base), exponent)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Literal(_) | Expr::Var | Expr::LogGeom => 5,
        }
    }
}

fn write_rational_atom(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() && !r.is_negative() {
        write!(f, "{r}")
    } else {
        write!(f, "({r})")
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        match self {
            Expr::Literal(r) => write_rational_atom(f, r),
            Expr::Var => f.write_str("z"),
            Expr::LogGeom => f.write_str("log(1/(1-z))"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, a.precedence() < prec)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                write_child(f, a, a.precedence() < prec)?;
                f.write_str(op)?;
                write_child(f, b, b.precedence() <= prec)
            }
            Expr::Pow(base, e) => {
                write_child(f, base, base.precedence() < 5)?;
                f.write_str("^")?;
                write_rational_atom(f, e)
            }
        }
    }
}
