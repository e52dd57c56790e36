//! Polynomial text syntax: a printer writing terms by descending degree and
//! a small recursive-descent parser accepting `+ - * / ^` and parentheses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::Poly;
use crate::arith::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

/// Displays a polynomial using a chosen variable name.
pub struct PolyDisplay<'a, F> {
    poly: &'a Poly<F>,
    var: &'a str,
}

impl<F: Field> Poly<F> {
    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }

    /// Parses polynomial text in the given variable.
    pub fn parse_in(text: &str, var: &str) -> Result<Self, ParsePolyError> {
        let mut p = Parser {
            src: text,
            pos: 0,
            var,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, text) = c.coeff_text();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = text == "1";
            match k {
                0 => write!(f, "{text}")?,
                _ => {
                    if !unit {
                        write!(f, "{text}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}

impl FromStr for Poly<Rational> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse_in(s, "x")
    }
}

impl<F: Field> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParsePolyError {
        ParsePolyError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr<F: Field>(&mut self) -> Result<Poly<F>, ParsePolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<Poly<F>, ParsePolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary::<F>()?;
                let c = match (d.is_constant(), d.lead()) {
                    (true, Some(c)) => c.clone(),
                    _ => {
                        return Err(ParsePolyError {
                            position: at,
                            message: "division only by a nonzero constant".into(),
                        })
                    }
                };
                acc = acc.scale(&c.inv().expect("nonzero"));
            } else if self.starts_atom() {
                // Implicit multiplication, as in `2x` or `3(x+1)`.
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_digit() || c == '(' || self.src[self.pos..].starts_with(self.var),
            None => false,
        }
    }

    fn unary<F: Field>(&mut self) -> Result<Poly<F>, ParsePolyError> {
        if self.eat('-') {
            return Ok(-self.unary::<F>()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.error("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<F: Field>(&mut self) -> Result<Poly<F>, ParsePolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: Rational = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("bad integer"))?;
                Ok(Poly::constant(F::from_rational(&n)))
            }
            Some(_) if self.src[self.pos..].starts_with(self.var) => {
                self.pos += self.var.len();
                Ok(Poly::x())
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
