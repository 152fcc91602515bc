//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var ('^' uint)? | '(' expr ')'
//! coeff  := int ('/' uint)?
//! ```
//!
//! Also accepted: a sign in front of the first term of an expression, and an
//! exponent on coefficients and parenthesized groups.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Field;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

pub fn parse_polynomial<K: Field>(text: &str, ring: &Arc<Ring<K>>) -> Result<Polynomial<K>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a, K: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring<K>>,
}

impl<K: Field> Parser<'_, K> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
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

    fn expr(&mut self) -> Result<Polynomial<K>> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<K>> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => self.coeff()?,
            Some(c) if c.is_ascii_alphabetic() => self.variable()?,
            Some(c) => return Err(self.error(format!("unexpected `{}`", c as char))),
            None => return Err(self.error("unexpected end of input")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.digits() {
            Some(d) => Ok(d.parse().expect("digits")),
            None => Err(self.error("expected unsigned integer")),
        }
    }

    fn coeff(&mut self) -> Result<Polynomial<K>> {
        let num = self.uint()?;
        let field = self.ring.field();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
            }
            let c = field.from_ratio(&num, &den)?;
            return Ok(Polynomial::constant(self.ring, c));
        }
        Ok(Polynomial::constant(self.ring, field.from_bigint(&num)))
    }

    fn variable(&mut self) -> Result<Polynomial<K>> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match self.ring.var_index(name) {
            Some(i) => Ok(Polynomial::var(self.ring, i)),
            None => Err(Error::UnknownVariable { name: name.to_string(), offset: start }),
        }
    }
}
