//! Expression parser and canonical printer for polynomials.
//!
//! Grammar (whitespace insignificant):
//!   expr   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := INT | VAR ('^' UINT)? | '(' expr ')' | '-' factor
//!
//! Variables must be declared in the ring. Output lists terms in descending
//! default (weighted-grevlex) order with explicit '*' and '^'.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

const MAX_PAREN_DEPTH: usize = 128;
const MAX_EXPONENT_LITERAL: u64 = 1_000_000_000;

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    ring: &'a Ring,
    depth: usize,
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
        ring,
        depth: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.checked_add(&rhs)?;
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.checked_sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                let rhs = self.factor()?;
                acc = acc.checked_mul(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("expected factor, found end of input")),
            Some(b'-') => {
                self.bump();
                Ok(self.factor()?.neg_ref())
            }
            Some(b'(') => {
                if self.depth >= MAX_PAREN_DEPTH {
                    return Err(self.error("expression nested too deeply"));
                }
                self.depth += 1;
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer_literal()?;
                Ok(Polynomial::constant(self.ring, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.identifier();
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.error(&format!("unknown variable {name:?}")))?;
                let mut exp = 1u64;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.bump();
                    self.skip_ws();
                    exp = self.exponent_literal()?;
                }
                let m = {
                    let mut e = vec![0u64; self.ring.num_vars()];
                    e[idx] = exp;
                    Monomial::new(e)
                };
                Ok(Polynomial::monomial(self.ring, m, BigInt::one()))
            }
            Some(c) => Err(self.error(&format!("unexpected character {:?}", c as char))),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).into_owned()
    }

    fn integer_literal(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.input[start..self.pos])
            .map_err(|_| self.error("invalid integer literal"))?;
        text.parse::<BigInt>()
            .map_err(|_| self.error("invalid integer literal"))
    }

    fn exponent_literal(&mut self) -> Result<u64> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.error("expected a non-negative integer exponent"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap_or("");
        let value: u64 = text
            .parse()
            .map_err(|_| self.error("exponent literal too large"))?;
        if value > MAX_EXPONENT_LITERAL {
            return Err(self.error("exponent literal too large"));
        }
        Ok(value)
    }
}

/// Display comparison: weighted degree first, lexicographic tiebreak.
pub(crate) fn display_cmp(a: &Monomial, b: &Monomial, weights: &[u64]) -> std::cmp::Ordering {
    a.weighted_degree(weights)
        .cmp(&b.weighted_degree(weights))
        .then_with(|| a.exponents().cmp(b.exponents()))
}

/// Canonical text form: terms in descending default order, explicit '*'/'^'.
pub fn format_polynomial(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let mut terms: Vec<(&Monomial, &BigInt)> = f.terms().collect();
    terms.sort_by(|a, b| display_cmp(b.0, a.0, ring.weights()));

    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            pieces.push(abs.to_string());
        }
        for (idx, &e) in m.exponents().iter().enumerate() {
            if e == 1 {
                pieces.push(ring.variables()[idx].clone());
            } else if e > 1 {
                pieces.push(format!("{}^{}", ring.variables()[idx], e));
            }
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ring() -> Ring {
        Ring::standard(&["x", "y"], 2).unwrap()
    }

    #[test]
    fn parses_spec_example() {
        let r = ring();
        let f = parse_polynomial(&r, "x^2*y - 3*y^3").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial::new(vec![2, 1])), BigInt::from(1));
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 3])), BigInt::from(-3));
        assert_eq!(format_polynomial(&f), "x^2*y - 3*y^3");
    }

    #[test]
    fn parses_zero() {
        let r = ring();
        let f = parse_polynomial(&r, "0").unwrap();
        assert!(f.is_zero());
        assert_eq!(format_polynomial(&f), "0");
    }

    #[test]
    fn rejects_negative_exponent() {
        let r = ring();
        let err = parse_polynomial(&r, "x^-1").unwrap_err();
        assert!(matches!(err, Error::ParseError { .. }));
    }

    #[test]
    fn rejects_unknown_variable_and_trailing_junk() {
        let r = ring();
        assert!(parse_polynomial(&r, "z + 1").is_err());
        assert!(parse_polynomial(&r, "x + 1 )").is_err());
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "x^").is_err());
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let r = ring();
        let f = parse_polynomial(&r, "-(x + y) * (x - y)").unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert_eq!(f, y.pow(2) - x.pow(2));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let r = ring();
        let a = parse_polynomial(&r, "x ^ 2 * y-3 * y ^ 3").unwrap();
        let b = parse_polynomial(&r, "x^2*y-3*y^3").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn depth_limit_is_enforced() {
        let r = ring();
        let deep = format!("{}x{}", "(".repeat(200), ")".repeat(200));
        assert!(parse_polynomial(&r, &deep).is_err());
    }
}
