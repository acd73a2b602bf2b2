//! Text grammar for polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | var | '(' expr ')'
//! rational := nat ('/' nat)?
//! var    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored between tokens.

use std::sync::Arc;

use num_bigint::BigInt;

use super::polynomial::Poly;
use super::ring::PolyRing;
use crate::error::{Error, Result};
use crate::field::Rational;

/// Parses `text` into a polynomial of `ring`.
///
/// ```
/// use singclass::poly::{parse_poly, MonomialOrder, PolyRing};
/// let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
/// let p = parse_poly("(x+y)^2", &r).unwrap();
/// assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
/// ```
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::SyntaxError { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut negate = false;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            negate ^= c == b'-';
        }
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a non-negative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::SyntaxError {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::from(1);
                // a slash directly followed by digits continues the literal
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save;
                        return Err(self.error("expected a denominator after `/`"));
                    }
                    den = d.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(Poly::constant(self.ring, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.index_of(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a rational literal such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.parse::<Rational>()
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

impl Poly {
    /// Parses `text` in `ring`; see [`parse_poly`].
    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
        parse_poly(text, ring)
    }
}
