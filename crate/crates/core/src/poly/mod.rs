//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map keyed by exponent vector and iterated in
//! decreasing local order, so the first term is the one of lowest degree.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;
pub(crate) use monomial::revlex;
pub use parse::parse_polynomial;

/// Exact rational coefficient.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent at byte {pos} is not a natural number that fits in 32 bits")]
    BadExponent { pos: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("a ring needs at least one variable")]
    EmptyRing,
    #[error("variable `{0}` appears twice in the ring")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
}

/// Ordered list of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Ring, PolyError> {
        if vars.is_empty() {
            return Err(PolyError::EmptyRing);
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().trim();
            if !is_identifier(v) {
                return Err(PolyError::InvalidVariableName(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(PolyError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Ring {
            names: names.into(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The ring with `extra` appended after the existing variables.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring, PolyError> {
        let all: Vec<&str> = self
            .names
            .iter()
            .map(String::as_str)
            .chain(extra.iter().map(AsRef::as_ref))
            .collect();
        Ring::new(&all)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// A polynomial with exact rational coefficients.
///
/// No stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial does not fit the ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(
            ring,
            Monomial::var_power(ring.nvars(), i, 1),
            Rational::one(),
        ))
    }

    /// Collects `(monomial, coefficient)` pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial does not fit the ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(text: &str, ring: &Ring) -> Result<Self, PolyError> {
        parse::parse_in_ring(text, ring)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing local order (lowest degree first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest term in the local order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Maximal total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimal total degree of a term (the order of the germ); `None` for zero.
    pub fn order(&self) -> Option<u64> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Polynomial, PolyError> {
        let mut result = Polynomial::constant(&self.ring, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative_index(i))
    }

    pub(crate) fn derivative_index(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps_mut()[i] = e - 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// All partial derivatives, in ring order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.derivative_index(i)).collect()
    }

    /// True iff every monomial has weighted degree `degree` under `weights`.
    pub fn is_weighted_homogeneous(
        &self,
        weights: &[Rational],
        degree: &Rational,
    ) -> Result<bool, PolyError> {
        if weights.len() != self.nvars() {
            return Err(PolyError::WeightCount {
                expected: self.nvars(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(PolyError::NonPositiveWeight);
        }
        Ok(self.terms.keys().all(|m| {
            let wd: Rational = m
                .exponents()
                .iter()
                .zip(weights)
                .map(|(&e, w)| w * Rational::from_integer(BigInt::from(e)))
                .sum();
            &wd == degree
        }))
    }

    /// Re-embeds the polynomial into `ring`, which must start with this
    /// polynomial's variables.
    pub fn embed(&self, ring: &Ring) -> Result<Polynomial, PolyError> {
        let n = self.nvars();
        if ring.nvars() < n || ring.names()[..n] != self.ring.names()[..] {
            return Err(PolyError::RingMismatch);
        }
        let extra = ring.nvars() - n;
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(extra), c.clone()))
                .collect(),
        })
    }

    /// Sets variable `var` to zero.
    pub fn restrict_to_zero(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(i) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Multiplies by the least common multiple of the denominators, giving
    /// integer coefficients in the same order as [`Polynomial::terms`].
    pub(crate) fn integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        use num_integer::Integer;
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in ring.names().iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: terms in decreasing local order, integer coefficients
/// without a denominator, e.g. `x^2 - 1/2*x*y + 3*y^3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} in {:?})", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Ring {
        Ring::new(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &xy()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^3+y^4").partial_derivative("x").unwrap(), p("3x^2"));
        assert_eq!(p("x^2*y + y^3").partial_derivative("y").unwrap(), p("x^2 + 3y^2"));
        assert!(p("5").partial_derivative("x").unwrap().is_zero());
        assert_eq!(
            p("x").partial_derivative("w"),
            Err(PolyError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn weighted_homogeneity() {
        let w = [q(4), q(3)];
        assert!(p("x^3+y^4").is_weighted_homogeneous(&w, &q(12)).unwrap());
        assert!(!p("x^3+y^4+x*y^3").is_weighted_homogeneous(&w, &q(12)).unwrap());
        assert!(p("0").is_weighted_homogeneous(&w, &q(7)).unwrap());
        assert_eq!(
            p("x").is_weighted_homogeneous(&[q(1)], &q(1)),
            Err(PolyError::WeightCount { expected: 2, got: 1 })
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("y^2 + x^2").to_string(), "x^2 + y^2");
        assert_eq!(p("-x*y + 1/2 y^3 - 3").to_string(), "-3 - x*y + 1/2*y^3");
        assert_eq!(p("x - x").to_string(), "0");
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let f = p("y^5 + x^2 + x*y");
        let (m, _) = f.leading_term().unwrap();
        assert_eq!(m.exponents(), &[2, 0]);
        assert_eq!(f.order(), Some(2));
        assert_eq!(f.degree(), Some(5));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(Ring::new::<&str>(&[]), Err(PolyError::EmptyRing));
        assert_eq!(
            Ring::new(&["x", "x"]),
            Err(PolyError::DuplicateVariable("x".into()))
        );
        assert!(Ring::new(&["1x"]).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = Ring::new(&["x", "z"]).unwrap();
        let a = p("x");
        let b = Polynomial::var(&other, "z").unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::RingMismatch));
    }
}
