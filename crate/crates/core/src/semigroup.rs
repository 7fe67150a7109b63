//! Numerical semigroups, plane-branch certification and monomial curves.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

/// Residue classes and gaps are stored explicitly; inputs beyond these sizes
/// are rejected instead of exhausting memory.
const MAX_RESIDUES: u64 = 1 << 24;
const MAX_GAPS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("no generators given")]
    Empty,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}, so the complement is infinite")]
    NotCoprime(u64),
    #[error("semigroup too large to enumerate")]
    TooLarge,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("not the semigroup of a plane branch")]
    NotPlaneBranch,
    #[error("invalid invariant pair: tau = {tau} exceeds mu = {mu} or is zero")]
    InvalidPair { mu: u64, tau: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// `apery[r]` is the least element congruent to `r` modulo the smallest
    /// generator.
    apery: Vec<u64>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    /// Generators as given, sorted and without repetitions.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn delta(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, x: u64) -> bool {
        let m = self.generators[0];
        x >= self.apery[(x % m) as usize]
    }

    /// The unique minimal generating set: `g` is redundant exactly when
    /// `g − h` is an element for some other generator `h < g`.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let gens = &self.generators;
        gens.iter()
            .copied()
            .filter(|&g| !gens.iter().any(|&h| h < g && self.contains(g - h)))
            .collect()
    }
}

pub fn semigroup_from_generators(gens: &[u64]) -> Result<NumericalSemigroup, SemigroupError> {
    if gens.is_empty() {
        return Err(SemigroupError::Empty);
    }
    if gens.contains(&0) {
        return Err(SemigroupError::ZeroGenerator);
    }
    let mut generators = gens.to_vec();
    generators.sort_unstable();
    generators.dedup();
    let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(SemigroupError::NotCoprime(g));
    }
    let m = generators[0];
    if m > MAX_RESIDUES {
        return Err(SemigroupError::TooLarge);
    }

    // shortest paths on residues mod m with edge lengths the generators
    let mut apery = vec![u64::MAX; m as usize];
    apery[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0u64))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > apery[r as usize] {
            continue;
        }
        for &s in &generators[1..] {
            let nd = d.checked_add(s).ok_or(SemigroupError::Overflow)?;
            let nr = ((r + s % m) % m) as usize;
            if nd < apery[nr] {
                apery[nr] = nd;
                heap.push(Reverse((nd, nr as u64)));
            }
        }
    }

    let delta: u64 = apery.iter().map(|a| a / m).sum();
    if delta > MAX_GAPS {
        return Err(SemigroupError::TooLarge);
    }
    let mut gaps: Vec<u64> = apery
        .iter()
        .enumerate()
        .flat_map(|(r, &a)| (r as u64..a).step_by(m as usize))
        .collect();
    gaps.sort_unstable();
    let conductor = gaps.last().map_or(0, |g| g + 1);
    Ok(NumericalSemigroup {
        generators,
        apery,
        gaps,
        conductor,
    })
}

/// Data showing that `⟨β̄₀,…,β̄_g⟩` is the semigroup of a plane branch.
///
/// Index conventions: `e[i]` for `i = 0..=g`; `n[i-1]` and `witnesses[i-1]`
/// belong to `i = 1..=g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneBranchCertificate {
    pub generators: Vec<u64>,
    pub e: Vec<u64>,
    pub n: Vec<u64>,
    /// `witnesses[i-1] = (l_0,…,l_{i-1})` with `n_i β̄_i = Σ l_j β̄_j` and
    /// `l_j < n_j` for `j ≥ 1`.
    pub condition1_witnesses: Vec<Vec<u64>>,
    pub condition2_ok: bool,
}

/// Outcome of [`certify_plane_branch`], including the reason for a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    /// Minimal generating set actually examined.
    pub generators: Vec<u64>,
    /// Set when the input was not minimal; lists the dropped generators.
    pub dropped: Vec<u64>,
    pub e: Vec<u64>,
    pub gcd_chain_ok: bool,
    pub condition1_ok: bool,
    pub condition2_ok: bool,
    pub certificate: Option<PlaneBranchCertificate>,
}

impl Certification {
    pub fn warning(&self) -> Option<String> {
        (!self.dropped.is_empty()).then(|| {
            format!(
                "generating set was not minimal; dropped {:?}, using {:?}",
                self.dropped, self.generators
            )
        })
    }
}

pub fn certify_plane_branch(gens: &[u64]) -> Result<Certification, SemigroupError> {
    let s = semigroup_from_generators(gens)?;
    let b = s.minimal_generators();
    let dropped: Vec<u64> = s.generators().iter().copied().filter(|x| !b.contains(x)).collect();
    let g = b.len() - 1;

    let mut e = Vec::with_capacity(g + 1);
    e.push(b[0]);
    for i in 1..=g {
        e.push(e[i - 1].gcd(&b[i]));
    }
    let n: Vec<u64> = (1..=g).map(|i| e[i - 1] / e[i]).collect();
    let gcd_chain_ok = e[g] == 1 && n.iter().all(|&x| x >= 2);

    let mut witnesses = Vec::with_capacity(g);
    let mut condition1_ok = gcd_chain_ok;
    if gcd_chain_ok {
        for i in 1..=g {
            let target = n[i - 1].checked_mul(b[i]).ok_or(SemigroupError::Overflow)?;
            match canonical_witness(target, &b[..i], &e, &n) {
                Some(l) => witnesses.push(l),
                None => {
                    condition1_ok = false;
                    break;
                }
            }
        }
    }
    let condition2_ok = (1..g).all(|i| (n[i - 1] as u128) * (b[i] as u128) < b[i + 1] as u128);

    let certificate = (condition1_ok && condition2_ok).then(|| PlaneBranchCertificate {
        generators: b.clone(),
        e: e.clone(),
        n,
        condition1_witnesses: witnesses,
        condition2_ok,
    });
    Ok(Certification {
        generators: b,
        dropped,
        e,
        gcd_chain_ok,
        condition1_ok,
        condition2_ok,
        certificate,
    })
}

/// Writes `target` as `Σ l_j b_j` with `0 ≤ l_j < n_j` for `j ≥ 1`, choosing
/// `l_j` from the top down so the remainder stays divisible by `e_{j-1}`.
/// Fails when the forced `l_0` would be negative.
fn canonical_witness(target: u64, b: &[u64], e: &[u64], n: &[u64]) -> Option<Vec<u64>> {
    let mut rest = target as i128;
    let mut l = vec![0u64; b.len()];
    for j in (1..b.len()).rev() {
        let nj = n[j - 1] as i128;
        let unit = (b[j] / e[j]) as i128;
        let t = (rest / e[j] as i128).rem_euclid(nj);
        let lj = (t * mod_inverse(unit, nj)).rem_euclid(nj);
        l[j] = lj as u64;
        rest -= lj * b[j] as i128;
    }
    if rest < 0 || rest % b[0] as i128 != 0 {
        return None;
    }
    l[0] = (rest / b[0] as i128) as u64;
    Some(l)
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let ext = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(ext.gcd, 1);
    ext.x.rem_euclid(m)
}

/// `μ = 2δ` for the semigroup of a plane branch.
pub fn branch_milnor(s: &NumericalSemigroup) -> Result<u64, SemigroupError> {
    if certify_plane_branch(s.generators())?.certificate.is_none() {
        return Err(SemigroupError::NotPlaneBranch);
    }
    Ok(2 * s.delta())
}

/// One binomial `u_i^{n_i} − ∏_{j<i} u_j^{l_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub index: usize,
    pub power: u64,
    pub exponents: Vec<u64>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}^{} - ", self.index, self.power)?;
        let mut first = true;
        for (j, &l) in self.exponents.iter().enumerate().filter(|(_, &l)| l > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if l == 1 {
                write!(f, "u{j}")?;
            } else {
                write!(f, "u{j}^{l}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCurveEquations {
    pub relations: Vec<Relation>,
}

impl MonomialCurveEquations {
    /// Checks that every relation vanishes under `u_j ↦ t^{β̄_j}`, i.e. that
    /// both monomials become the same power of `t`.
    pub fn vanish_on(&self, gens: &[u64]) -> bool {
        self.relations.iter().all(|r| {
            let lhs = r.power as u128 * gens[r.index] as u128;
            let rhs: u128 = r.exponents.iter().zip(gens).map(|(&l, &b)| l as u128 * b as u128).sum();
            lhs == rhs
        })
    }
}

pub fn monomial_curve_equations(cert: &PlaneBranchCertificate) -> MonomialCurveEquations {
    MonomialCurveEquations {
        relations: cert
            .condition1_witnesses
            .iter()
            .enumerate()
            .map(|(k, l)| Relation {
                index: k + 1,
                power: cert.n[k],
                exponents: l.clone(),
            })
            .collect(),
    }
}

/// `4(μ − τ) < μ`, the bound for branches in any embedding dimension.
pub fn space_branch_bound_check(mu: u64, tau: u64) -> Result<bool, SemigroupError> {
    if tau > mu || tau == 0 {
        return Err(SemigroupError::InvalidPair { mu, tau });
    }
    Ok(4 * ((mu - tau) as u128) < mu as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_semigroups() {
        let s = semigroup_from_generators(&[2, 3]).unwrap();
        assert_eq!((s.gaps(), s.delta(), s.conductor()), (&[1][..], 1, 2));
        let s = semigroup_from_generators(&[4, 6, 13]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 5, 7, 9, 11, 15]);
        assert_eq!((s.delta(), s.conductor()), (8, 16));
        let s = semigroup_from_generators(&[1]).unwrap();
        assert_eq!((s.gaps().len(), s.conductor()), (0, 0));
    }

    #[test]
    fn generator_errors() {
        assert_eq!(semigroup_from_generators(&[]), Err(SemigroupError::Empty));
        assert_eq!(semigroup_from_generators(&[0, 3]), Err(SemigroupError::ZeroGenerator));
        assert_eq!(semigroup_from_generators(&[4, 6]), Err(SemigroupError::NotCoprime(2)));
    }

    #[test]
    fn certificates() {
        let c = certify_plane_branch(&[2, 3]).unwrap().certificate.unwrap();
        assert_eq!((c.e, c.n, c.condition1_witnesses), (vec![2, 1], vec![2], vec![vec![3]]));

        let c = certify_plane_branch(&[4, 6, 13]).unwrap().certificate.unwrap();
        assert_eq!(c.e, vec![4, 2, 1]);
        assert_eq!(c.n, vec![2, 2]);
        assert_eq!(c.condition1_witnesses, vec![vec![3], vec![5, 1]]);

        let r = certify_plane_branch(&[3, 4, 5]).unwrap();
        assert!(!r.gcd_chain_ok);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn condition_two_failure() {
        // e = (4,2,1), 2·6 = 12 is not below 11
        let r = certify_plane_branch(&[4, 6, 11]).unwrap();
        assert!(r.gcd_chain_ok && !r.condition2_ok);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn non_minimal_input_is_minimized() {
        let r = certify_plane_branch(&[2, 3, 4, 5]).unwrap();
        assert_eq!(r.generators, vec![2, 3]);
        assert_eq!(r.dropped, vec![4, 5]);
        assert!(r.warning().is_some());
        assert!(r.certificate.is_some());
    }

    #[test]
    fn milnor_of_branches() {
        let m = |g: &[u64]| branch_milnor(&semigroup_from_generators(g).unwrap());
        assert_eq!(m(&[2, 3]), Ok(2));
        assert_eq!(m(&[4, 6, 13]), Ok(16));
        for k in 1..20 {
            assert_eq!(m(&[2, 2 * k + 1]), Ok(2 * k));
        }
        assert_eq!(m(&[3, 4, 5]), Err(SemigroupError::NotPlaneBranch));
    }

    #[test]
    fn monomial_curves() {
        let eq = |g: &[u64]| {
            let c = certify_plane_branch(g).unwrap().certificate.unwrap();
            let m = monomial_curve_equations(&c);
            assert!(m.vanish_on(g));
            m.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(eq(&[2, 3]), vec!["u1^2 - u0^3"]);
        assert_eq!(eq(&[4, 6, 13]), vec!["u1^2 - u0^3", "u2^2 - u0^5*u1"]);
        assert_eq!(eq(&[3, 7]), vec!["u1^3 - u0^7"]);
    }

    #[test]
    fn space_branch_bound() {
        assert_eq!(space_branch_bound_check(16, 16), Ok(true));
        assert_eq!(space_branch_bound_check(16, 12), Ok(false));
        assert_eq!(space_branch_bound_check(2288, 1660), Ok(false));
        assert!(space_branch_bound_check(3, 4).is_err());
    }
}
