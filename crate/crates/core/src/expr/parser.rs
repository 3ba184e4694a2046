use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::ast::Expr;
use super::lexer::{tokenize, LexError, Token, TokenKind};
use crate::Rational;

/// Largest exponent magnitude a folded exponent tower may reach.
const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("unbalanced parenthesis at offset {offset}")]
    UnbalancedParen { offset: usize },
    #[error("exponent at offset {offset} must be an integer or a parenthesized rational literal")]
    NonLiteralExponent { offset: usize },
    #[error("unexpected trailing input at offset {offset}")]
    TrailingTokens { offset: usize },
    #[error("unexpected {found:?} at offset {offset}")]
    UnexpectedToken { found: String, offset: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("log at offset {offset} only accepts log(1/(1-z)) or log(1-z)")]
    UnsupportedLog { offset: usize },
}

impl ParseError {
    /// Byte offset of the problem, when there is one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Lex(e) => Some(e.offset()),
            ParseError::UnbalancedParen { offset }
            | ParseError::NonLiteralExponent { offset }
            | ParseError::TrailingTokens { offset }
            | ParseError::UnexpectedToken { offset, .. }
            | ParseError::UnsupportedLog { offset } => Some(*offset),
            ParseError::UnexpectedEnd => None,
        }
    }
}

/// Tokenizes and parses `input`.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    parse_tokens(&tokenize(input)?)
}

pub fn parse_tokens(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expr()?;
    match p.peek() {
        None => Ok(expr),
        Some(t) if t.kind == TokenKind::RParen => {
            Err(ParseError::UnbalancedParen { offset: t.offset })
        }
        Some(t) => Err(ParseError::TrailingTokens { offset: t.offset }),
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&'a TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn close_paren(&mut self, open_offset: usize) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::RParen => {
                self.pos += 1;
                Ok(())
            }
            None => Err(ParseError::UnbalancedParen {
                offset: open_offset,
            }),
            Some(t) => Err(unexpected(t)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&TokenKind::Plus) {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat(&TokenKind::Minus) {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&TokenKind::Star) {
                lhs = Expr::mul(lhs, self.unary()?);
            } else if self.eat(&TokenKind::Slash) {
                lhs = Expr::div(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&TokenKind::Minus) {
            Ok(Expr::neg(self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let mut exponents = Vec::new();
        let mut first_offset = 0;
        while self.eat(&TokenKind::Caret) {
            let offset = self.peek().map_or(0, |t| t.offset);
            if exponents.is_empty() {
                first_offset = offset;
            }
            exponents.push(self.exponent()?);
        }
        let Some(mut value) = exponents.pop() else {
            return Ok(base);
        };
        // a^b^c = a^(b^c): fold the tower from the right.
        while let Some(e) = exponents.pop() {
            value = fold_power(&e, &value).ok_or(ParseError::NonLiteralExponent {
                offset: first_offset,
            })?;
        }
        Ok(Expr::pow(base, value))
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let Some(tok) = self.next() else {
            return Err(ParseError::UnexpectedEnd);
        };
        let bad = ParseError::NonLiteralExponent { offset: tok.offset };
        match &tok.kind {
            TokenKind::Int(n) => Ok(Rational::from_integer(n.clone())),
            TokenKind::LParen => {
                let negative = self.eat(&TokenKind::Minus);
                let Some(TokenKind::Int(numer)) = self.next().map(|t| &t.kind) else {
                    return Err(bad);
                };
                let mut value = Rational::from_integer(numer.clone());
                if self.eat(&TokenKind::Slash) {
                    match self.next().map(|t| &t.kind) {
                        Some(TokenKind::Int(d)) if !d.is_zero() => {
                            value /= Rational::from_integer(d.clone());
                        }
                        _ => return Err(bad),
                    }
                }
                if self.peek_kind() != Some(&TokenKind::RParen) {
                    return Err(bad);
                }
                self.pos += 1;
                Ok(if negative { -value } else { value })
            }
            _ => Err(bad),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.next() else {
            return Err(ParseError::UnexpectedEnd);
        };
        match &tok.kind {
            TokenKind::Int(n) => Ok(Expr::Literal(Rational::from_integer(n.clone()))),
            TokenKind::Z => Ok(Expr::Var),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.close_paren(tok.offset)?;
                Ok(inner)
            }
            TokenKind::Log => {
                let open = self.next().ok_or(ParseError::UnexpectedEnd)?;
                if open.kind != TokenKind::LParen {
                    return Err(unexpected(open));
                }
                let arg = self.expr()?;
                self.close_paren(open.offset)?;
                log_form(arg).ok_or(ParseError::UnsupportedLog { offset: tok.offset })
            }
            TokenKind::RParen => Err(ParseError::UnbalancedParen { offset: tok.offset }),
            _ => Err(unexpected(tok)),
        }
    }
}

fn unexpected(t: &Token) -> ParseError {
    ParseError::UnexpectedToken {
        found: t.kind.to_string(),
        offset: t.offset,
    }
}

/// `log(1/(1-z))` is the log series itself; `log(1-z)` is its negation.
fn log_form(arg: Expr) -> Option<Expr> {
    let one_minus_z = Expr::sub(Expr::int(1), Expr::Var);
    if arg == one_minus_z {
        Some(Expr::neg(Expr::LogGeom))
    } else if arg == Expr::div(Expr::int(1), one_minus_z) {
        Some(Expr::LogGeom)
    } else {
        None
    }
}

/// `base^exp` for literal exponents, when `exp` is an integer of sane size.
fn fold_power(base: &Rational, exp: &Rational) -> Option<Rational> {
    if !exp.is_integer() {
        return None;
    }
    let k = exp.numer().to_i64()?;
    if k.unsigned_abs() > MAX_EXPONENT as u64 {
        return None;
    }
    if k < 0 && base.is_zero() {
        return None;
    }
    let mag = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    let value = if k < 0 { mag.recip() } else { mag };
    let limit = BigInt::from(MAX_EXPONENT);
    (value.numer().abs() <= limit && value.denom() <= &limit || value.is_one()).then_some(value)
}
