//! Shared textual grammar for sparse polynomials.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := coeff | [coeff "*"] factor ("*" factor)*
//! coeff  := digits ["/" digits]
//! factor := ident ["^" digits]
//! ```
//!
//! Identifiers start with a letter and continue with letters, digits and
//! underscores; a `{...}` group of digits and commas may follow an underscore.
//! `0` parses to the empty sum.

use num_traits::{Signed, Zero};

use super::rational::{format_rational, is_negative, parse_rational, Rational};
use crate::error::{Error, Result};

/// One parsed term: coefficient and `(identifier, exponent)` factors in input order.
pub type RawTerm = (Rational, Vec<(String, u32)>);

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.err("expected identifier")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else if c == '{' && self.src[..self.pos].ends_with('_') {
                let close = self.src[self.pos..]
                    .find('}')
                    .ok_or_else(|| self.err("unterminated `{`"))?;
                self.pos += close + 1;
            } else {
                break;
            }
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            d.parse().map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        self.skip_ws();
        let mut factors = Vec::new();
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.digits().unwrap_or_default();
            let q = if self.eat('/') {
                let den = self
                    .digits()
                    .ok_or_else(|| self.err("expected denominator"))?;
                parse_rational(&format!("{num}/{den}"))?
            } else {
                parse_rational(num)?
            };
            if !self.eat('*') {
                return Ok((q, factors));
            }
            q
        } else {
            Rational::from_integer(1.into())
        };
        loop {
            let name = self.ident()?;
            let e = self.exponent()?;
            factors.push((name, e));
            if !self.eat('*') {
                break;
            }
        }
        Ok((coeff, factors))
    }
}

/// Parses a polynomial into raw terms; like monomials are not merged here.
pub fn parse_terms(src: &str) -> Result<Vec<RawTerm>> {
    let mut cur = Cursor { src, pos: 0 };
    let mut out = Vec::new();
    let mut negate = cur.eat('-');
    loop {
        let (mut q, f) = cur.term()?;
        if negate {
            q = -q;
        }
        out.push((q, f));
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        negate = if cur.eat('+') {
            false
        } else if cur.eat('-') {
            true
        } else {
            return Err(cur.err("expected `+` or `-`"));
        };
    }
    out.retain(|(q, _)| !q.is_zero());
    Ok(out)
}

/// Renders `(coefficient, monomial text)` pairs; an empty monomial text is the unit.
pub fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (i, (q, mono)) in terms.into_iter().enumerate() {
        let neg = is_negative(q);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = q.abs();
        let unit = a == Rational::from_integer(1.into());
        if mono.is_empty() {
            out.push_str(&format_rational(&a));
        } else if unit {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `name` or `name^e`.
pub fn format_power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}
