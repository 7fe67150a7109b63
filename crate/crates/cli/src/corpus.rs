//! Seeded germ families for sweeps and the self-test.

use std::fmt;
use std::str::FromStr;

use germ_core::invariants::suspend;
use germ_core::poly::{Monomial, Polynomial, Rational, Ring};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `x^d + y^d + z^d`
    Fermat,
    /// `x^a + y^b` for every pair in the ranges
    Quasihomogeneous2Var,
    /// `f + z^k` over a deformed two-variable corpus
    Suspension,
    /// `x^a + y^b` plus random terms above the weighted degree
    DeformedQuasihomogeneous,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Fermat,
        Family::Quasihomogeneous2Var,
        Family::Suspension,
        Family::DeformedQuasihomogeneous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Fermat => "fermat",
            Family::Quasihomogeneous2Var => "quasihomogeneous_2var",
            Family::Suspension => "suspension",
            Family::DeformedQuasihomogeneous => "deformed_quasihomogeneous",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.as_str()).collect();
                format!("unknown family {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Inclusive integer range, written `lo..hi`, `lo-hi` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn new(lo: u32, hi: u32) -> Span {
        Span { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid range {s:?}; expected lo..hi"))
        };
        let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub family: Family,
    /// Fermat degrees.
    pub d: Span,
    /// Exponents of the quasihomogeneous seed `x^a + y^b`.
    pub a: Span,
    pub b: Span,
    /// Suspension exponents.
    pub k: Span,
    /// Number of random draws for the seeded families.
    pub count: usize,
    pub seed: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            family: Family::Fermat,
            d: Span::new(2, 6),
            a: Span::new(3, 7),
            b: Span::new(3, 7),
            k: Span::new(2, 2),
            count: 50,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub text: String,
    pub poly: Polynomial,
}

impl Germ {
    fn new(poly: Polynomial) -> Germ {
        Germ {
            text: poly.to_string(),
            poly,
        }
    }
}

fn ring(names: &[&str]) -> Ring {
    Ring::new(names).expect("valid variable names")
}

fn power_sum(ring: &Ring, exps: &[u32]) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        exps.iter()
            .enumerate()
            .map(|(v, &e)| (Monomial::var_power(n, v, e), Rational::from_integer(1.into()))),
    )
}

pub fn fermat(d: Span) -> Vec<Germ> {
    let r = ring(&["x", "y", "z"]);
    d.iter().map(|d| Germ::new(power_sum(&r, &[d, d, d]))).collect()
}

pub fn quasihomogeneous_2var(a: Span, b: Span) -> Vec<Germ> {
    let r = ring(&["x", "y"]);
    a.iter()
        .flat_map(|a| b.iter().map(move |b| (a, b)))
        .map(|(a, b)| Germ::new(power_sum(&r, &[a, b])))
        .collect()
}

/// Monomials `x^i y^j` of weighted degree above one for weights
/// `(1/a, 1/b)`, taken inside the box below `(a−2, b−2)` when that is
/// possible so that they can change τ, and inside `(a, b)` otherwise.
fn deformation_monomials(a: u32, b: u32) -> Vec<(u32, u32)> {
    let above = |i: u32, j: u32| i * b + j * a > a * b;
    let inner: Vec<_> = (0..=a.saturating_sub(2))
        .flat_map(|i| (0..=b.saturating_sub(2)).map(move |j| (i, j)))
        .filter(|&(i, j)| above(i, j))
        .collect();
    if !inner.is_empty() {
        return inner;
    }
    (0..=a)
        .flat_map(|i| (0..=b).map(move |j| (i, j)))
        .filter(|&(i, j)| above(i, j))
        .collect()
}

fn draw_deformed(r: &Ring, a: Span, b: Span, rng: &mut ChaCha8Rng) -> Polynomial {
    let ea = rng.gen_range(a.lo..=a.hi);
    let eb = rng.gen_range(b.lo..=b.hi);
    let mut f = power_sum(r, &[ea, eb]);
    let candidates = deformation_monomials(ea, eb);
    let count = rng.gen_range(1..=3usize).min(candidates.len());
    for &(i, j) in candidates.choose_multiple(rng, count) {
        let mut c = rng.gen_range(1..=5i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let term = Polynomial::monomial(r, Monomial::new(vec![i, j]), Rational::from_integer(BigInt::from(c)));
        f = f.checked_add(&term).expect("same ring");
    }
    f
}

/// `count` seeded draws of `x^a + y^b + (random terms)`.
pub fn deformed_quasihomogeneous(a: Span, b: Span, count: usize, seed: u64) -> Vec<Germ> {
    let r = ring(&["x", "y"]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Germ::new(draw_deformed(&r, a, b, &mut rng))).collect()
}

/// `f + z^k` for every deformed germ `f` and every `k`.
pub fn suspensions(a: Span, b: Span, k: Span, count: usize, seed: u64) -> Vec<Germ> {
    deformed_quasihomogeneous(a, b, count, seed)
        .into_iter()
        .flat_map(|g| {
            k.iter()
                .map(|k| Germ::new(suspend(&g.poly, k).expect("k is at least 2").suspended))
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn generate(spec: &SweepSpec) -> Result<Vec<Germ>, String> {
    let check_min = |s: Span, min: u32, name: &str| {
        if s.lo < min {
            Err(format!("--{name} values must be at least {min}"))
        } else {
            Ok(())
        }
    };
    Ok(match spec.family {
        Family::Fermat => {
            check_min(spec.d, 2, "d")?;
            fermat(spec.d)
        }
        Family::Quasihomogeneous2Var => {
            check_min(spec.a, 2, "a")?;
            check_min(spec.b, 2, "b")?;
            quasihomogeneous_2var(spec.a, spec.b)
        }
        Family::DeformedQuasihomogeneous => {
            check_min(spec.a, 2, "a")?;
            check_min(spec.b, 2, "b")?;
            deformed_quasihomogeneous(spec.a, spec.b, spec.count, spec.seed)
        }
        Family::Suspension => {
            check_min(spec.a, 2, "a")?;
            check_min(spec.b, 2, "b")?;
            check_min(spec.k, 2, "k")?;
            suspensions(spec.a, spec.b, spec.k, spec.count, spec.seed)
        }
    })
}
