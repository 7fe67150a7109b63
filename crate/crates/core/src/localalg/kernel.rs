//! Integer-coefficient polynomials used inside the standard-basis engine.
//!
//! Variables are stored permuted into precedence order, so the local order
//! on kernel monomials is always the plain negative-degree reverse
//! lexicographic one. Coefficients are integers; polynomials are kept
//! primitive up to sign outside of a running reduction.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use rug::integer::Order;
use rug::Integer;
use smallvec::SmallVec;

use crate::poly::{revlex, Monomial, Polynomial, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mon {
    pub exps: SmallVec<[u32; 4]>,
    pub deg: u32,
}

impl Mon {
    pub fn from_exps(exps: SmallVec<[u32; 4]>) -> Mon {
        let deg = exps.iter().sum();
        Mon { exps, deg }
    }

    #[inline]
    pub fn divides(&self, other: &Mon) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Mon) -> Mon {
        Mon {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Mon) -> Mon {
        Mon {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Mon) -> Mon {
        Mon::from_exps(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mon) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Local order: lower degree is greater, ties by reverse lex.
#[inline]
pub(crate) fn cmp_mon(a: &Mon, b: &Mon) -> Ordering {
    match b.deg.cmp(&a.deg) {
        Ordering::Equal => revlex(&a.exps, &b.exps),
        o => o,
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub mon: Mon,
    pub coef: Integer,
}

/// Terms sorted in decreasing local order; the first one is the leading
/// term and the last one has maximal degree.
#[derive(Clone, Debug, Default)]
pub(crate) struct KPoly {
    pub terms: Vec<Term>,
}

impl KPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lm(&self) -> &Mon {
        &self.terms[0].mon
    }

    pub fn lc(&self) -> &Integer {
        &self.terms[0].coef
    }

    pub fn ecart(&self) -> u32 {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => b.mon.deg - a.mon.deg,
            _ => 0,
        }
    }

    /// Drops every term of degree at least `cutoff`.
    pub fn truncate(&mut self, cutoff: u32) {
        let keep = self.terms.partition_point(|t| t.mon.deg < cutoff);
        self.terms.truncate(keep);
    }

    /// Divides by the gcd of the coefficients and makes the leading
    /// coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = Integer::new();
        for t in &self.terms {
            g.gcd_mut(&t.coef);
            if g == 1 {
                break;
            }
        }
        if self.terms[0].coef < 0 {
            g = -g;
        }
        if g != 1 {
            for t in &mut self.terms {
                t.coef.div_exact_mut(&g);
            }
        }
    }

    /// Divides out the content if it is not one; cheap when the gcd of the
    /// first few coefficients is already one.
    pub fn reduce_content(&mut self) {
        let mut g = Integer::new();
        for t in &self.terms {
            g.gcd_mut(&t.coef);
            if g == 1 {
                return;
            }
        }
        if g != 0 {
            for t in &mut self.terms {
                t.coef.div_exact_mut(&g);
            }
        }
    }
}

/// Computes `a·sa·f[1..] − b·sb·g[1..]` where `sa`, `sb` are monomial
/// shifts chosen so that the leading terms of the two operands cancel.
/// Terms of degree at least `cutoff` are dropped.
pub(crate) fn combine(
    a: &Integer,
    sa: Option<&Mon>,
    f: &KPoly,
    b: &Integer,
    sb: Option<&Mon>,
    g: &KPoly,
    cutoff: Option<u32>,
) -> KPoly {
    let limit = cutoff.unwrap_or(u32::MAX);
    let shift = |s: Option<&Mon>, m: &Mon| match s {
        Some(s) => s.mul(m),
        None => m.clone(),
    };
    let scale_a = |c: &Integer| if *a == 1 { c.clone() } else { Integer::from(a * c) };
    let scale_b = |c: &Integer| if *b == 1 { Integer::from(-c) } else { -Integer::from(b * c) };

    // Both inputs are sorted by increasing degree, so once a shifted term
    // reaches the cutoff the rest of that operand can be ignored.
    let head = |s: Option<&Mon>, p: &KPoly, i: usize| -> Option<Mon> {
        p.terms
            .get(i)
            .map(|t| shift(s, &t.mon))
            .filter(|m| m.deg < limit)
    };

    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let mut mf = head(sa, f, i);
    let mut mg = head(sb, g, j);
    loop {
        let ord = match (&mf, &mg) {
            (Some(x), Some(y)) => cmp_mon(x, y),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => {
                let m = mf.take().expect("present");
                out.push(Term {
                    mon: m,
                    coef: scale_a(&f.terms[i].coef),
                });
                i += 1;
                mf = head(sa, f, i);
            }
            Ordering::Less => {
                let m = mg.take().expect("present");
                out.push(Term {
                    mon: m,
                    coef: scale_b(&g.terms[j].coef),
                });
                j += 1;
                mg = head(sb, g, j);
            }
            Ordering::Equal => {
                let m = mf.take().expect("present");
                let mut c = scale_a(&f.terms[i].coef);
                if *b == 1 {
                    c -= &g.terms[j].coef;
                } else {
                    c -= Integer::from(b * &g.terms[j].coef);
                }
                if c != 0 {
                    out.push(Term { mon: m, coef: c });
                }
                i += 1;
                j += 1;
                mf = head(sa, f, i);
                mg = head(sb, g, j);
            }
        }
    }
    KPoly { terms: out }
}

/// Converts a polynomial into kernel form with variables permuted by
/// `precedence` (kernel variable `k` is ring variable `precedence[k]`).
pub(crate) fn to_kernel(p: &Polynomial, precedence: &[usize]) -> KPoly {
    let mut terms: Vec<Term> = p
        .integer_terms()
        .into_iter()
        .map(|(m, c)| Term {
            mon: Mon::from_exps(precedence.iter().map(|&v| m.exponent(v)).collect()),
            coef: to_rug(&c),
        })
        .collect();
    terms.sort_by(|x, y| cmp_mon(&y.mon, &x.mon));
    let mut k = KPoly { terms };
    k.make_primitive();
    k
}

pub(crate) fn kernel_mon_to_monomial(m: &Mon, precedence: &[usize]) -> Monomial {
    let mut exps = vec![0u32; precedence.len()];
    for (k, &v) in precedence.iter().enumerate() {
        exps[v] = m.exps[k];
    }
    Monomial::new(exps)
}

pub(crate) fn from_kernel(p: &KPoly, ring: &Ring, precedence: &[usize]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        p.terms.iter().map(|t| {
            (
                kernel_mon_to_monomial(&t.mon, precedence),
                Rational::from_integer(from_rug(&t.coef)),
            )
        }),
    )
}

fn to_rug(c: &BigInt) -> Integer {
    let (sign, digits) = c.to_u32_digits();
    let v = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

fn from_rug(c: &Integer) -> BigInt {
    let sign = match c.cmp0() {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
        Ordering::Greater => Sign::Plus,
    };
    BigInt::from_slice(sign, &c.to_digits::<u32>(Order::Lsf))
}
