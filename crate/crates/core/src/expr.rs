//! The coefficient-expression grammar for Weil algebra elements:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'xi'INT | 'eps' | '(' expr ')' | '-' factor
//! rational := INT ('/' INT)?
//! ```
//!
//! Products of generators are expanded with Grassmann signs at parse time,
//! so `xi2*xi1` parses to `−xi1*xi2` and `xi1*xi1` to `0`. Errors carry the
//! byte offset of the offending token.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weil::{WeilAlgebra, WeilElement};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Xi(usize),
    Eps,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Int(src[start..i].to_string())));
            }
            _ if src[i..].starts_with("xi") => {
                let start = i;
                i += 2;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(Error::Parse {
                        offset: start,
                        msg: "expected a generator index after `xi`".into(),
                    });
                }
                let idx: usize = src[digits_start..i].parse().map_err(|_| Error::Parse {
                    offset: digits_start,
                    msg: "generator index out of range".into(),
                })?;
                toks.push((start, Tok::Xi(idx)));
            }
            _ if src[i..].starts_with("eps") => {
                toks.push((i, Tok::Eps));
                i += 3;
            }
            _ => {
                return Err(Error::Parse { offset: i, msg: format!("unexpected character `{c}`") })
            }
        }
    }
    Ok(Lexer { toks, pos: 0, end: src.len() })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
}

struct Parser<'a> {
    lexer: Lexer,
    algebra: &'a Arc<WeilAlgebra>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<WeilElement> {
        let mut acc = self.term()?;
        loop {
            match self.lexer.peek() {
                Some(Tok::Plus) => {
                    self.lexer.next();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.lexer.next();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeilElement> {
        let mut acc = self.factor()?;
        while matches!(self.lexer.peek(), Some(Tok::Star)) {
            self.lexer.next();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeilElement> {
        let offset = self.lexer.offset();
        match self.lexer.next() {
            Some(Tok::Int(digits)) => {
                // rational := INT ('/' INT)?
                let numer: Scalar = digits.parse()?;
                if matches!(self.lexer.peek(), Some(Tok::Slash)) {
                    self.lexer.next();
                    let denom_offset = self.lexer.offset();
                    match self.lexer.next() {
                        Some(Tok::Int(d)) => {
                            let denom: Scalar = d.parse()?;
                            if denom.is_zero() {
                                return Err(Error::Parse {
                                    offset: denom_offset,
                                    msg: "division by zero".into(),
                                });
                            }
                            Ok(WeilElement::scalar(self.algebra, &numer / &denom))
                        }
                        _ => Err(Error::Parse {
                            offset: denom_offset,
                            msg: "expected a denominator after `/`".into(),
                        }),
                    }
                } else {
                    Ok(WeilElement::scalar(self.algebra, numer))
                }
            }
            Some(Tok::Xi(idx)) => WeilElement::generator(self.algebra, idx).map_err(|_| {
                Error::Parse {
                    offset,
                    msg: format!(
                        "unknown generator xi{idx} in `{}`",
                        self.algebra.descriptor()
                    ),
                }
            }),
            Some(Tok::Eps) => WeilElement::eps(self.algebra).map_err(|_| Error::Parse {
                offset,
                msg: format!("`{}` has no eps", self.algebra.descriptor()),
            }),
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.lexer.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse { offset: self.lexer.offset(), msg: "expected `)`".into() }),
                }
            }
            other => Err(Error::Parse {
                offset,
                msg: match other {
                    Some(t) => format!("unexpected token {t:?}"),
                    None => "unexpected end of input".into(),
                },
            }),
        }
    }
}

/// Parses a coefficient expression into an element of the given algebra.
///
/// ```
/// use shcp_core::{expr::parse_coeff_expr, weil::build_grassmann};
/// let a = build_grassmann(2);
/// assert_eq!(parse_coeff_expr("xi2*xi1", &a).unwrap().to_string(), "-xi1*xi2");
/// assert_eq!(parse_coeff_expr("xi1*xi1 + 3", &a).unwrap().to_string(), "3");
/// ```
pub fn parse_coeff_expr(src: &str, algebra: &Arc<WeilAlgebra>) -> Result<WeilElement> {
    if !algebra.is_monomial_mode() {
        return Err(Error::Invalid(format!(
            "cannot parse expressions over `{}`",
            algebra.descriptor()
        )));
    }
    let mut parser = Parser { lexer: lex(src)?, algebra };
    let value = parser.expr()?;
    if parser.lexer.peek().is_some() {
        return Err(Error::Parse {
            offset: parser.lexer.offset(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(value)
}
