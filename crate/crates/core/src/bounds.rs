//! Closed-form invariants of special families and the catalog of μ/τ bounds.
//!
//! Every verdict is decided with exact integer or rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid invariant pair: tau = {tau} exceeds mu = {mu}")]
    TauExceedsMu { mu: u64, tau: u64 },
    #[error("tau must be at least 1")]
    ZeroTau,
    #[error("germ dimension must be at least 1")]
    ZeroDimension,
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(u64),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("stirling2({n}, {k}) needs k <= n")]
    StirlingRange { n: u64, k: u64 },
    #[error("Kerner–Némethi constant needs n >= 2 and r >= 1, got n = {n}, r = {r}")]
    KnRange { n: u64, r: u64 },
    #[error("unknown bound identifier {0:?}")]
    UnknownBound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// μ ≥ τ
    Positivity,
    /// τ ≥ μ/N for a germ in N variables
    Liu,
    /// 3μ < 4τ for plane curves
    DimcaGreuel43,
    /// 2μ < 3τ for surfaces
    Conjecture32,
    /// μ − τ ≤ 2p_g for surfaces
    Wahl2pg,
    /// 8p_g + 1 ≤ μ for surface double points
    Tomari,
    /// 6p_g ≤ μ for surfaces
    Durfee,
    /// 4(μ − τ) < μ for branches
    SpaceBranchQuarter,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::Positivity,
        BoundId::Liu,
        BoundId::DimcaGreuel43,
        BoundId::Conjecture32,
        BoundId::Wahl2pg,
        BoundId::Tomari,
        BoundId::Durfee,
        BoundId::SpaceBranchQuarter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Positivity => "positivity",
            BoundId::Liu => "liu",
            BoundId::DimcaGreuel43 => "dimca_greuel_4_3",
            BoundId::Conjecture32 => "conjecture_3_2",
            BoundId::Wahl2pg => "wahl_2pg",
            BoundId::Tomari => "tomari",
            BoundId::Durfee => "durfee",
            BoundId::SpaceBranchQuarter => "space_branch_quarter",
        }
    }

    /// Whether the bound is a strict inequality, so that `holds` means
    /// `margin > 0` rather than `margin >= 0`.
    pub fn is_strict(self) -> bool {
        matches!(
            self,
            BoundId::DimcaGreuel43 | BoundId::Conjecture32 | BoundId::SpaceBranchQuarter
        )
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| BoundsError::UnknownBound(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    pub mu: u64,
    pub tau: u64,
    /// Dimension `n` of the germ; it lives in `n + 1` variables.
    pub n: u64,
    pub p_g: Option<u64>,
    pub multiplicity: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub applicable: bool,
    /// Absent when not applicable or when a needed input is missing.
    pub holds: Option<bool>,
    /// `B − A` for the bound `A < B` (or `A ≤ B`). Computed whenever the
    /// inputs allow, also for bounds outside their range of applicability.
    pub margin: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    /// One entry per catalog bound, in [`BoundId::ALL`] order.
    pub verdicts: Vec<(BoundId, Verdict)>,
}

impl BoundReport {
    pub fn get(&self, id: BoundId) -> &Verdict {
        &self
            .verdicts
            .iter()
            .find(|(b, _)| *b == id)
            .expect("every catalog bound has a verdict")
            .1
    }

    /// Applicable bounds whose verdict is `false`.
    pub fn violations(&self) -> Vec<BoundId> {
        self.verdicts
            .iter()
            .filter(|(_, v)| v.holds == Some(false))
            .map(|(b, _)| *b)
            .collect()
    }
}

pub fn bound_report(
    mu: u64,
    tau: u64,
    n: u64,
    p_g: Option<u64>,
    multiplicity: Option<u64>,
) -> Result<BoundReport, BoundsError> {
    if tau > mu {
        return Err(BoundsError::TauExceedsMu { mu, tau });
    }
    if tau == 0 {
        return Err(BoundsError::ZeroTau);
    }
    if n == 0 {
        return Err(BoundsError::ZeroDimension);
    }
    let int = |x: i128| Rational::from_integer(BigInt::from(x));
    let (m, t) = (mu as i128, tau as i128);
    let pg = p_g.map(|p| p as i128);

    let verdicts = BoundId::ALL
        .into_iter()
        .map(|id| {
            let (applicable, margin) = match id {
                BoundId::Positivity => (true, Some(int(m - t))),
                BoundId::Liu => (
                    true,
                    Some(int(t) - Rational::new(BigInt::from(m), BigInt::from(n + 1))),
                ),
                BoundId::DimcaGreuel43 => (n == 1, Some(int(4 * t - 3 * m))),
                BoundId::Conjecture32 => (n == 2, Some(int(3 * t - 2 * m))),
                BoundId::Wahl2pg => (n == 2, pg.map(|p| int(2 * p - (m - t)))),
                BoundId::Tomari => (
                    n == 2 && multiplicity.is_none_or(|k| k == 2),
                    pg.map(|p| int(m - 8 * p - 1)),
                ),
                BoundId::Durfee => (n == 2, pg.map(|p| int(m - 6 * p))),
                BoundId::SpaceBranchQuarter => (n == 1, Some(int(m - 4 * (m - t)))),
            };
            let needs_mult = id == BoundId::Tomari && multiplicity.is_none();
            let holds = match (&margin, applicable && !needs_mult) {
                (Some(g), true) => Some(if id.is_strict() { g.is_positive() } else { !g.is_negative() }),
                _ => None,
            };
            (
                id,
                Verdict {
                    applicable,
                    holds,
                    margin,
                },
            )
        })
        .collect();
    Ok(BoundReport {
        inputs: BoundInputs {
            mu,
            tau,
            n,
            p_g,
            multiplicity,
        },
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperisolatedData {
    /// Degree of the initial form.
    pub d: u64,
    /// Milnor numbers of the singular points of the projective curve `f_d = 0`.
    pub local_mus: Vec<u64>,
}

/// `p_g = d(d−1)(d−2)/6` and `μ = (d−1)³ + Σ μ_i`.
pub fn superisolated_invariants(data: &SuperisolatedData) -> Result<(u128, u128), BoundsError> {
    let d = data.d as u128;
    if d < 2 {
        return Err(BoundsError::DegreeTooSmall(data.d));
    }
    let of = BoundsError::Overflow;
    let p_g = d
        .checked_mul(d - 1)
        .and_then(|x| x.checked_mul(d - 2))
        .ok_or(of.clone())?
        / 6;
    let mut mu = (d - 1).checked_pow(3).ok_or(of.clone())?;
    for &m in &data.local_mus {
        mu = mu.checked_add(m as u128).ok_or(of.clone())?;
    }
    Ok((p_g, mu))
}

/// Minimal Tjurina number `(2d−3)(d+1)(d−1)/3` among superisolated
/// singularities with initial form of degree `d`.
pub fn wahl_tau_min(d: u64) -> Result<u128, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DegreeTooSmall(d));
    }
    let d = d as u128;
    (2 * d - 3)
        .checked_mul(d + 1)
        .and_then(|x| x.checked_mul(d - 1))
        .map(|x| x / 3)
        .ok_or(BoundsError::Overflow)
}

/// Stirling number of the second kind by the triangle recurrence.
pub fn stirling2(n: u64, k: u64) -> Result<BigUint, BoundsError> {
    if k > n {
        return Err(BoundsError::StirlingRange { n, k });
    }
    let k = k as usize;
    // row[j] = S(i, j) for the current i
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(std::mem::take(&mut row[k]))
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binomial(n: u64, k: u64) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `C_{n,r} = binom(n+r−1, n)·(n+r)! / (S(n+r, r)·r!)`.
pub fn kerner_nemethi_constant(n: u64, r: u64) -> Result<Rational, BoundsError> {
    if n < 2 || r < 1 {
        return Err(BoundsError::KnRange { n, r });
    }
    let num = binomial(n + r - 1, n) * factorial(n + r);
    let den = stirling2(n + r, r)? * factorial(r);
    Ok(Rational::new(num.into(), den.into()))
}

/// One item of the Kerner–Némethi prediction relating μ and p_g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernerNemethiItem {
    /// 1: `μ ≥ 6p_g` (n = 2, r = 1); 2: `μ > 4p_g` (n = 2);
    /// 3: `μ ≥ C_{n,r} p_g` (n ≥ 3).
    pub item: u8,
    pub holds: bool,
    pub margin: Rational,
}

/// Evaluates every item that applies to an ICIS of dimension `n` and
/// codimension `r` with the given μ and p_g.
pub fn kerner_nemethi_check(n: u64, r: u64, mu: u64, p_g: u64) -> Result<Vec<KernerNemethiItem>, BoundsError> {
    if n < 2 || r < 1 {
        return Err(BoundsError::KnRange { n, r });
    }
    let mu_q = Rational::from_integer(mu.into());
    let pg_q = Rational::from_integer(p_g.into());
    let item = |item: u8, c: Rational, strict: bool| {
        let margin = &mu_q - c * &pg_q;
        let holds = if strict { margin.is_positive() } else { !margin.is_negative() };
        KernerNemethiItem { item, holds, margin }
    };
    let mut out = Vec::new();
    if n == 2 {
        if r == 1 {
            out.push(item(1, Rational::from_integer(6.into()), false));
        }
        out.push(item(2, Rational::from_integer(4.into()), true));
    } else {
        out.push(item(3, kerner_nemethi_constant(n, r)?, false));
    }
    Ok(out)
}
