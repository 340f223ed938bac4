//! Recursive-descent reader for polynomial text.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' uint | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is ignored between tokens. The optional leading sign lets
//! canonical output such as `-x1^2 - 2*x1` read back in.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownVariable(usize),
    DivisionOutsideRational,
    ZeroDenominator,
    ExponentTooLarge,
    TrailingInput,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {:?}", c),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {}", what),
            ParseErrorKind::UnknownVariable(i) => write!(f, "unknown variable x{}", i),
            ParseErrorKind::DivisionOutsideRational => {
                f.write_str("'/' is only allowed inside a rational literal")
            }
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
            ParseErrorKind::TrailingInput => f.write_str("unexpected trailing input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {kind}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        let kind = if parser.src[parser.pos] == b'/' {
            ParseErrorKind::DivisionOutsideRational
        } else {
            ParseErrorKind::TrailingInput
        };
        return Err(parser.error(kind));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate_first = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| ParseError {
                pos: start,
                kind: ParseErrorKind::ExponentTooLarge,
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                    return Err(self.error(ParseErrorKind::Expected("variable index")));
                }
                let idx = self.uint()?;
                let idx: usize = idx.try_into().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.n {
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::UnknownVariable(idx),
                    });
                }
                Ok(Polynomial::from_monomial(
                    Monomial::var(self.n, idx),
                    Rational::from_integer(1.into()),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(b'/') => Err(self.error(ParseErrorKind::DivisionOutsideRational)),
                    Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c as char))),
                    None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.bigint()?;
                let mut value = Rational::from_integer(num);
                // the '/' must follow the numerator directly to belong to the literal
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let start = self.pos;
                    if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error(ParseErrorKind::Expected("denominator")));
                    }
                    let den = self.bigint()?;
                    if den.is_zero() {
                        return Err(ParseError {
                            pos: start,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.n, value))
            }
            Some(b'/') => Err(self.error(ParseErrorKind::DivisionOutsideRational)),
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c as char))),
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.src.get(self.pos) {
                None => self.error(ParseErrorKind::UnexpectedEnd),
                Some(_) => self.error(ParseErrorKind::Expected("integer")),
            });
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| ParseError {
            pos: start,
            kind: ParseErrorKind::ExponentTooLarge,
        })
    }

    fn bigint(&mut self) -> Result<BigInt, ParseError> {
        let d = self.digits()?;
        Ok(d.parse().expect("ascii digits parse as BigInt"))
    }
}
