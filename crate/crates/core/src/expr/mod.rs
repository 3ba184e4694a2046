//! A small language for power series expressions in `z`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)*          right-associative
//! atom   := INT | 'z' | '(' expr ')' | 'log' '(' expr ')'
//! exponent := INT | '(' ['-'] INT ['/' INT] ')'
//! ```
//!
//! `log` accepts only `log(1/(1-z))` and `log(1-z)`.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::Expr;
pub use eval::{evaluate, EvalError};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, parse_tokens, ParseError};
