use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    Z,
    Log,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Int(n) => write!(f, "{n}"),
            TokenKind::Z => f.write_str("z"),
            TokenKind::Log => f.write_str("log"),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Slash => f.write_str("/"),
            TokenKind::Caret => f.write_str("^"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
        }
    }
}

/// A token and the byte offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unexpected character {ch:?} at offset {offset}")]
    UnexpectedChar { ch: char, offset: usize },
    #[error("unknown identifier {name:?} at offset {offset}")]
    UnknownIdent { name: String, offset: usize },
}

impl LexError {
    pub fn offset(&self) -> usize {
        match self {
            LexError::UnexpectedChar { offset, .. } | LexError::UnknownIdent { offset, .. } => {
                *offset
            }
        }
    }
}

/// Splits `input` into tokens. Integers are unsigned; `p/q` reaches the parser
/// as three tokens so that `z^2/3` keeps its usual meaning.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        let single = match ch {
            '+' => Some(TokenKind::Plus),
            '-' | '\u{2212}' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            tokens.push(Token { kind, offset });
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
        } else if ch.is_ascii_digit() {
            let mut end = offset;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let value: BigInt = input[offset..end].parse().expect("ascii digits");
            tokens.push(Token {
                kind: TokenKind::Int(value),
                offset,
            });
        } else if ch.is_ascii_alphabetic() {
            let mut end = offset;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_alphanumeric() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let kind = match &input[offset..end] {
                "z" => TokenKind::Z,
                "log" => TokenKind::Log,
                name => {
                    return Err(LexError::UnknownIdent {
                        name: name.to_owned(),
                        offset,
                    })
                }
            };
            tokens.push(Token { kind, offset });
        } else {
            return Err(LexError::UnexpectedChar { ch, offset });
        }
    }
    Ok(tokens)
}
