//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor (('*' factor) | factor)*
//! factor   := rational | var ['^' nat] | '(' expr ')' ['^' nat]
//! rational := nat ['/' nat]
//! var      := letter (letter|digit)*
//! ```
//!
//! Whitespace is insignificant between tokens. Juxtaposition multiplies.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational, Ring};

/// Parses `text` in the ring with variables `vars`.
pub fn parse_polynomial<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, PolyError> {
    let ring = Ring::new(vars)?;
    parse_in_ring(text, &ring)
}

pub(super) fn parse_in_ring(text: &str, ring: &Ring) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.checked_add(&t)?;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.checked_sub(&t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_digit() || c.is_ascii_alphabetic() || c == b'('
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(c) if Self::starts_factor(c) => {
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let den = if self.eat(b'/') {
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error("expected denominator after `/`"));
                    }
                    let start = self.pos;
                    let d = self.nat()?;
                    if d.is_zero() {
                        self.pos = start;
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(self.ring, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                // identifiers are ASCII by construction
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                let e = self.exponent()?;
                Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var_power(self.ring.nvars(), i, e),
                    Rational::one(),
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                let e = self.exponent()?;
                inner.checked_pow(e)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(PolyError::BadExponent { pos: start });
        }
        let n = self.nat()?;
        u32::try_from(n).map_err(|_| PolyError::BadExponent { pos: start })
    }

    fn nat(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        digits
            .parse::<BigInt>()
            .map_err(|_| self.error("malformed number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Polynomial, PolyError> {
        parse_polynomial(s, &["x", "y", "z"])
    }

    #[test]
    fn sum_of_squares() {
        let f = parse_polynomial("x^2+y^2", &["x", "y"]).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial::new([2, 0])), Rational::one());
        assert_eq!(f.coefficient(&Monomial::new([0, 2])), Rational::one());
    }

    #[test]
    fn binomial_identity_collects_terms() {
        let f = parse_polynomial("(x+y)^2 - x^2 - 2*x*y", &["x", "y"]).unwrap();
        let g = parse_polynomial("y^2", &["x", "y"]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(parse("2x y").unwrap(), parse("2*x*y").unwrap());
        assert_eq!(parse("3(x+1)").unwrap(), parse("3x+3").unwrap());
        assert_eq!(parse("(x)(y)").unwrap(), parse("x*y").unwrap());
    }

    #[test]
    fn rational_literals() {
        let f = parse("1/2 x - 2/4").unwrap();
        assert_eq!(
            f.coefficient(&Monomial::new([1, 0, 0])),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(f.constant_term(), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn errors_report_position() {
        assert_eq!(
            parse("x + * y"),
            Err(PolyError::Syntax {
                pos: 4,
                msg: "unexpected `*`".into()
            })
        );
        assert_eq!(parse("x + w"), Err(PolyError::UnknownVariable("w".into())));
        assert_eq!(parse("x^-2"), Err(PolyError::BadExponent { pos: 2 }));
        assert_eq!(parse("x^99999999999"), Err(PolyError::BadExponent { pos: 2 }));
        assert!(matches!(parse("(x+y"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse(""), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("x y)"), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn identifiers_are_maximal_munch() {
        assert_eq!(parse("xy"), Err(PolyError::UnknownVariable("xy".into())));
        let f = parse_polynomial("x1^2 + x10", &["x1", "x10"]).unwrap();
        assert_eq!(f.num_terms(), 2);
    }
}
