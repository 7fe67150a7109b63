//! Local monomial order, Mora normal forms, standard bases and the
//! codimension of quotients of the local ring.

mod kernel;
mod mora;
mod staircase;

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use thiserror::Error;

use crate::poly::{Monomial, Polynomial, Rational, Ring};
use kernel::{from_kernel, kernel_mon_to_monomial, to_kernel, KPoly};
use mora::{Clock, Engine};

pub use mora::EngineStats;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalAlgError {
    #[error("monomials or polynomials live in different rings")]
    RingMismatch,
    #[error("precedence is not a permutation of the ring variables")]
    BadPrecedence,
    #[error("generator list is empty or all generators are zero")]
    NoGenerators,
    #[error("standard basis computation exceeded its time limit")]
    Timeout,
}

/// Negative-degree reverse lexicographic order on the local ring.
///
/// `precedence[0]` is the most significant variable; ties between
/// monomials of equal degree are decided by the least significant
/// variable first, smaller exponent winning.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalOrder {
    precedence: Vec<usize>,
}

impl LocalOrder {
    /// Variables in ring order: `x_0 > x_1 > ...`.
    pub fn identity(nvars: usize) -> LocalOrder {
        LocalOrder {
            precedence: (0..nvars).collect(),
        }
    }

    pub fn for_ring(ring: &Ring) -> LocalOrder {
        Self::identity(ring.nvars())
    }

    pub fn new(precedence: Vec<usize>) -> Result<LocalOrder, LocalAlgError> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return Err(LocalAlgError::BadPrecedence);
            }
        }
        Ok(LocalOrder { precedence })
    }

    /// Order from variable names listed most significant first.
    pub fn from_names<S: AsRef<str>>(ring: &Ring, names: &[S]) -> Result<LocalOrder, LocalAlgError> {
        let precedence = names
            .iter()
            .map(|n| ring.index_of(n.as_ref()).ok_or(LocalAlgError::BadPrecedence))
            .collect::<Result<Vec<_>, _>>()?;
        if precedence.len() != ring.nvars() {
            return Err(LocalAlgError::BadPrecedence);
        }
        Self::new(precedence)
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    fn check_poly(&self, p: &Polynomial) -> Result<(), LocalAlgError> {
        if p.nvars() == self.nvars() {
            Ok(())
        } else {
            Err(LocalAlgError::RingMismatch)
        }
    }
}

/// Compares two monomials in the local order.
pub fn compare(m1: &Monomial, m2: &Monomial, order: &LocalOrder) -> Result<Ordering, LocalAlgError> {
    if m1.nvars() != order.nvars() || m2.nvars() != order.nvars() {
        return Err(LocalAlgError::RingMismatch);
    }
    let deg = m2.degree().cmp(&m1.degree());
    if deg != Ordering::Equal {
        return Ok(deg);
    }
    let a: Vec<u32> = order.precedence.iter().map(|&v| m1.exponent(v)).collect();
    let b: Vec<u32> = order.precedence.iter().map(|&v| m2.exponent(v)).collect();
    Ok(crate::poly::revlex(&a, &b))
}

fn check_ring(polys: &[Polynomial], order: &LocalOrder) -> Result<Option<Ring>, LocalAlgError> {
    let mut ring: Option<&Ring> = None;
    for p in polys {
        order.check_poly(p)?;
        match ring {
            None => ring = Some(p.ring()),
            Some(r) if r != p.ring() => return Err(LocalAlgError::RingMismatch),
            _ => {}
        }
    }
    Ok(ring.cloned())
}

/// Mora normal form of `p` with respect to `gens`.
///
/// The result `r` satisfies `u·p − r ∈ (gens)` for a unit `u` of the local
/// ring, and either `r = 0` or no leading monomial of `gens` divides the
/// leading monomial of `r`.
pub fn mora_normal_form(
    p: &Polynomial,
    gens: &[Polynomial],
    order: &LocalOrder,
) -> Result<Polynomial, LocalAlgError> {
    check_ring(std::slice::from_ref(p), order)?;
    if let Some(r) = check_ring(gens, order)? {
        if &r != p.ring() {
            return Err(LocalAlgError::RingMismatch);
        }
    }
    let prec = order.precedence();
    let reducers: Vec<KPoly> = gens.iter().map(|g| to_kernel(g, prec)).collect();
    let r = mora::normal_form(to_kernel(p, prec), &reducers, None, &mut Clock::new(None))
        .expect("no deadline set");
    Ok(from_kernel(&r, p.ring(), prec))
}

/// Tuning knobs for [`standard_basis_with`].
#[derive(Debug, Clone, Copy)]
pub struct BasisOptions {
    /// Abort with [`LocalAlgError::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
    /// Use the product and chain criteria to skip pairs.
    pub criteria: bool,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            deadline: None,
            criteria: true,
        }
    }
}

/// A standard basis together with the minimal generators of its leading
/// ideal.
#[derive(Clone)]
pub struct StandardBasis {
    ring: Ring,
    order: LocalOrder,
    generators: Vec<Polynomial>,
    leading_ideal: Vec<Monomial>,
    stats: EngineStats,
}

impl StandardBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Minimal generators of the leading ideal, pairwise incomparable.
    pub fn leading_ideal(&self) -> &[Monomial] {
        &self.leading_ideal
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    /// Standard basis of the ideal enlarged by `extra`, reusing this basis
    /// instead of recomputing the pairs already processed.
    pub fn extend(&self, extra: &[Polynomial], opts: &BasisOptions) -> Result<StandardBasis, LocalAlgError> {
        if let Some(r) = check_ring(extra, &self.order)? {
            if r != self.ring {
                return Err(LocalAlgError::RingMismatch);
            }
        }
        let prec = self.order.precedence();
        let base: Vec<KPoly> = self.generators.iter().map(|g| to_kernel(g, prec)).collect();
        let extra: Vec<KPoly> = extra.iter().map(|g| to_kernel(g, prec)).collect();
        // a finite base staircase already bounds the cutoff
        let guess = match quotient_codimension(self) {
            Codimension::Finite(_) => None,
            Codimension::Infinite => Some(first_guess(self.ring.nvars(), &extra)),
        };
        let engine = compute(self.ring.nvars(), opts, guess, |e| {
            for g in &base {
                e.insert_completed(g.clone());
            }
            for g in &extra {
                e.add(g.clone());
            }
        })?;
        Ok(finish(engine, &self.ring, &self.order))
    }
}

impl fmt::Debug for StandardBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StandardBasis")
            .field("ring", &self.ring)
            .field("generators", &self.generators.len())
            .field("leading_ideal", &self.leading_ideal)
            .finish()
    }
}

/// Provisional cutoffs tried before falling back to the untruncated
/// computation, which also decides infinite codimension.
const TRUNCATED_ROUNDS: u32 = 4;

/// Starting cutoff: one more than the socle degree of a complete
/// intersection of forms of the largest generator order, plus slack.
fn first_guess(nvars: usize, gens: &[KPoly]) -> u32 {
    let order = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.lm().deg)
        .max()
        .unwrap_or(1)
        .max(1);
    nvars as u32 * (order - 1) + 4
}

/// Runs the engine under growing provisional cutoffs until the result is
/// certified exact.
fn compute(
    nvars: usize,
    opts: &BasisOptions,
    guess: Option<u32>,
    seed: impl Fn(&mut Engine),
) -> Result<Engine, LocalAlgError> {
    let mut clock = Clock::new(opts.deadline);
    let mut cutoff = guess;
    let mut restarts = 0;
    loop {
        let mut engine = Engine::new(nvars, opts.criteria);
        if let Some(c) = cutoff {
            engine.provisional_cutoff(c);
        }
        seed(&mut engine);
        engine.run(&mut clock).map_err(|_| LocalAlgError::Timeout)?;
        if engine.certified() {
            engine.stats.restarts = restarts;
            return Ok(engine);
        }
        restarts += 1;
        cutoff = match cutoff {
            Some(c) if restarts < TRUNCATED_ROUNDS => Some(c + (c / 4).max(2)),
            _ => None,
        };
    }
}

fn finish(engine: Engine, ring: &Ring, order: &LocalOrder) -> StandardBasis {
    let prec = order.precedence();
    let kept: Vec<&KPoly> = engine.basis.iter().filter(|p| !p.is_zero()).collect();
    let mut generators: Vec<Polynomial> = kept.iter().map(|p| from_kernel(p, ring, prec)).collect();
    // Truncation erases elements lying in m^D. Their leading monomials are
    // themselves in m^D, hence in the ideal, and stand in for them.
    for e in engine.minimal_leading_monomials() {
        if !kept.iter().any(|p| p.lm().exps.as_slice() == e.as_slice()) {
            let m = kernel_mon_to_monomial(&kernel::Mon::from_exps(e.iter().copied().collect()), prec);
            generators.push(Polynomial::monomial(ring, m, Rational::from_integer(1.into())));
        }
    }
    let leading_ideal = sorted_ideal(engine.minimal_leading_monomials(), prec);
    StandardBasis {
        ring: ring.clone(),
        order: order.clone(),
        generators,
        leading_ideal,
        stats: engine.stats,
    }
}

fn sorted_ideal(kernel_exps: &[Vec<u32>], prec: &[usize]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = kernel_exps
        .iter()
        .map(|e| kernel_mon_to_monomial(&kernel::Mon::from_exps(e.iter().copied().collect()), prec))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Standard basis of the ideal generated by `gens` in the local ring.
pub fn standard_basis(gens: &[Polynomial], order: &LocalOrder) -> Result<StandardBasis, LocalAlgError> {
    standard_basis_with(gens, order, &BasisOptions::default())
}

pub fn standard_basis_with(
    gens: &[Polynomial],
    order: &LocalOrder,
    opts: &BasisOptions,
) -> Result<StandardBasis, LocalAlgError> {
    let ring = check_ring(gens, order)?.ok_or(LocalAlgError::NoGenerators)?;
    if gens.iter().all(Polynomial::is_zero) {
        return Err(LocalAlgError::NoGenerators);
    }
    if gens.iter().all(|g| g.num_terms() <= 1) {
        return Ok(monomial_basis(gens, &ring, order));
    }
    let prec = order.precedence();
    let gens: Vec<KPoly> = gens.iter().map(|g| to_kernel(g, prec)).collect();
    let guess = first_guess(ring.nvars(), &gens);
    let engine = compute(ring.nvars(), opts, Some(guess), |e| {
        for g in &gens {
            e.add(g.clone());
        }
    })?;
    Ok(finish(engine, &ring, order))
}

/// Generators that are all monomials already form a standard basis.
fn monomial_basis(gens: &[Polynomial], ring: &Ring, order: &LocalOrder) -> StandardBasis {
    let prec = order.precedence();
    let exps: Vec<Vec<u32>> = gens
        .iter()
        .filter_map(|g| g.leading_term())
        .map(|(m, _)| prec.iter().map(|&v| m.exponent(v)).collect())
        .collect();
    let minimal = staircase::minimalize(&exps);
    StandardBasis {
        ring: ring.clone(),
        order: order.clone(),
        generators: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
        leading_ideal: sorted_ideal(&minimal, prec),
        stats: EngineStats::default(),
    }
}

/// Dimension over the coefficient field, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codimension {
    Finite(u128),
    Infinite,
}

impl Codimension {
    pub fn finite(self) -> Option<u128> {
        match self {
            Codimension::Finite(n) => Some(n),
            Codimension::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Codimension::Finite(_))
    }
}

impl fmt::Display for Codimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codimension::Finite(n) => write!(f, "{n}"),
            Codimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// Number of monomials outside the leading ideal.
pub fn quotient_codimension(basis: &StandardBasis) -> Codimension {
    monomial_ideal_codimension(basis.leading_ideal(), basis.ring().nvars())
}

/// Number of monomials outside the ideal generated by `gens`.
pub fn monomial_ideal_codimension(gens: &[Monomial], nvars: usize) -> Codimension {
    let exps: Vec<Vec<u32>> = gens.iter().map(|m| m.exponents().to_vec()).collect();
    match staircase::staircase(&exps, nvars) {
        Some(s) => Codimension::Finite(s.count),
        None => Codimension::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn polys(src: &[&str], vars: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()
    }

    fn lead(sb: &StandardBasis) -> Vec<Vec<u32>> {
        sb.leading_ideal().iter().map(|m| m.exponents().to_vec()).collect()
    }

    #[test]
    fn compare_examples() {
        let o = LocalOrder::identity(2);
        let one = Monomial::one(2);
        let x = Monomial::new([1, 0]);
        assert_eq!(compare(&one, &x, &o), Ok(Ordering::Greater));
        assert_eq!(
            compare(&Monomial::new([2, 0]), &Monomial::new([0, 2]), &o),
            Ok(Ordering::Greater)
        );
        assert_eq!(compare(&x, &x, &o), Ok(Ordering::Equal));
        assert_eq!(
            compare(&x, &Monomial::new([1, 0, 0]), &o),
            Err(LocalAlgError::RingMismatch)
        );
    }

    #[test]
    fn compare_respects_precedence() {
        // y before x: now x^2 has the larger exponent in the last variable
        let o = LocalOrder::new(vec![1, 0]).unwrap();
        assert_eq!(
            compare(&Monomial::new([2, 0]), &Monomial::new([0, 2]), &o),
            Ok(Ordering::Less)
        );
        assert!(LocalOrder::new(vec![0, 0]).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let v = ["x", "y"];
        let o = LocalOrder::identity(2);
        let nf = |p: &str, g: &[&str]| {
            mora_normal_form(&parse_polynomial(p, &v).unwrap(), &polys(g, &v), &o).unwrap()
        };
        assert!(nf("x^2", &["x"]).is_zero());
        assert!(nf("y", &["y - y^2"]).is_zero());
        assert_eq!(nf("x", &["y"]), parse_polynomial("x", &v).unwrap());
    }

    #[test]
    fn standard_basis_examples() {
        let v = ["x", "y"];
        let o = LocalOrder::identity(2);
        let sb = standard_basis(&polys(&["3x^2", "4y^3"], &v), &o).unwrap();
        assert_eq!(lead(&sb), vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(quotient_codimension(&sb), Codimension::Finite(6));

        let sb = standard_basis(&polys(&["2x*y", "x^2+3y^2"], &v), &o).unwrap();
        assert_eq!(lead(&sb), vec![vec![2, 0], vec![1, 1], vec![0, 3]]);
        assert_eq!(quotient_codimension(&sb), Codimension::Finite(4));

        let sb = standard_basis(&polys(&["x"], &v), &o).unwrap();
        assert_eq!(lead(&sb), vec![vec![1, 0]]);
        assert_eq!(quotient_codimension(&sb), Codimension::Infinite);
    }

    #[test]
    fn unit_generator_gives_whole_ring() {
        let v = ["x", "y"];
        let sb = standard_basis(&polys(&["1 + x", "y^2"], &v), &LocalOrder::identity(2)).unwrap();
        assert_eq!(quotient_codimension(&sb), Codimension::Finite(0));
    }

    #[test]
    fn empty_input_is_rejected() {
        let o = LocalOrder::identity(2);
        assert_eq!(standard_basis(&[], &o).unwrap_err(), LocalAlgError::NoGenerators);
        let z = polys(&["0"], &["x", "y"]);
        assert_eq!(standard_basis(&z, &o).unwrap_err(), LocalAlgError::NoGenerators);
    }
}
