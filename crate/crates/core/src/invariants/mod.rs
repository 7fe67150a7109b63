//! Milnor and Tjurina numbers of hypersurface germs at the origin.

mod weights;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::localalg::{
    quotient_codimension, standard_basis_with, BasisOptions, Codimension, LocalAlgError, LocalOrder,
};
use crate::poly::{Monomial, PolyError, Polynomial, Rational};

pub use weights::{find_positive_weights, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("the zero polynomial does not define a hypersurface germ")]
    ZeroPolynomial,
    #[error("polynomial does not vanish at the origin")]
    NonzeroConstantTerm,
    #[error("suspension exponent must be at least 2, got {0}")]
    BadSuspensionExponent(u32),
    #[error(transparent)]
    Basis(#[from] LocalAlgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermInvariants {
    /// `n = N - 1` for a germ in `N` variables.
    pub germ_dimension: usize,
    pub mu: Codimension,
    pub tau: Codimension,
    pub isolated: bool,
    pub weighted_homogeneous_in_coords: Option<Weights>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionResult {
    pub suspended: Polynomial,
    pub new_variable: String,
}

fn check_germ(f: &Polynomial) -> Result<(), InvariantsError> {
    if f.is_zero() {
        return Err(InvariantsError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(InvariantsError::NonzeroConstantTerm);
    }
    Ok(())
}

fn jacobian(f: &Polynomial) -> Vec<Polynomial> {
    f.gradient().into_iter().filter(|g| !g.is_zero()).collect()
}

/// Codimension of the Jacobian ideal in the local ring.
pub fn milnor_number(f: &Polynomial) -> Result<Codimension, InvariantsError> {
    milnor_number_with(f, &BasisOptions::default())
}

pub fn milnor_number_with(f: &Polynomial, opts: &BasisOptions) -> Result<Codimension, InvariantsError> {
    check_germ(f)?;
    let basis = standard_basis_with(&jacobian(f), &LocalOrder::for_ring(f.ring()), opts)?;
    Ok(quotient_codimension(&basis))
}

/// Codimension of the Tjurina ideal `(f, ∂f)` in the local ring.
pub fn tjurina_number(f: &Polynomial) -> Result<Codimension, InvariantsError> {
    tjurina_number_with(f, &BasisOptions::default())
}

pub fn tjurina_number_with(f: &Polynomial, opts: &BasisOptions) -> Result<Codimension, InvariantsError> {
    milnor_then_tjurina(f, opts)?.tau
}

/// Result of computing μ and then τ, keeping μ when the τ stage fails
/// (for example on a deadline).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staged {
    pub mu: Codimension,
    pub tau: Result<Codimension, InvariantsError>,
}

/// Computes μ, then τ by extending the Jacobian standard basis with `f`.
pub fn milnor_then_tjurina(f: &Polynomial, opts: &BasisOptions) -> Result<Staged, InvariantsError> {
    check_germ(f)?;
    let order = LocalOrder::for_ring(f.ring());
    let jac = standard_basis_with(&jacobian(f), &order, opts)?;
    let mu = quotient_codimension(&jac);
    // f is constant along the critical locus, so V(f, ∂f) = V(∂f) near 0
    if mu == Codimension::Infinite {
        return Ok(Staged { mu, tau: Ok(mu) });
    }
    let tau = jac
        .extend(std::slice::from_ref(f), opts)
        .map(|b| quotient_codimension(&b))
        .map_err(InvariantsError::from);
    Ok(Staged { mu, tau })
}

pub fn germ_invariants(f: &Polynomial) -> Result<GermInvariants, InvariantsError> {
    germ_invariants_with(f, &BasisOptions::default())
}

pub fn germ_invariants_with(f: &Polynomial, opts: &BasisOptions) -> Result<GermInvariants, InvariantsError> {
    let Staged { mu, tau } = milnor_then_tjurina(f, opts)?;
    let tau = tau?;
    Ok(GermInvariants {
        germ_dimension: f.nvars() - 1,
        mu,
        tau,
        isolated: mu.is_finite(),
        weighted_homogeneous_in_coords: find_positive_weights(f),
    })
}

/// `f + z^k` over the ring extended by a fresh variable `z`, `z1`, `z2`, ...
pub fn suspend(f: &Polynomial, k: u32) -> Result<SuspensionResult, InvariantsError> {
    if k < 2 {
        return Err(InvariantsError::BadSuspensionExponent(k));
    }
    let ring = f.ring();
    let name = std::iter::once("z".to_string())
        .chain((1..).map(|i| format!("z{i}")))
        .find(|n| ring.index_of(n).is_none())
        .expect("unbounded name supply");
    let extended = ring.extend(&[&name])?;
    let z = extended.index_of(&name).expect("just added");
    let zk = Polynomial::monomial(&extended, Monomial::var_power(extended.nvars(), z, k), Rational::one());
    let suspended = f.embed(&extended)?.checked_add(&zk)?;
    Ok(SuspensionResult {
        suspended,
        new_variable: name,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn p(src: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(src, vars).unwrap()
    }

    fn fin(n: u128) -> Codimension {
        Codimension::Finite(n)
    }

    #[test]
    fn small_examples() {
        let xy = ["x", "y"];
        assert_eq!(milnor_number(&p("x^2+y^2", &xy)).unwrap(), fin(1));
        assert_eq!(tjurina_number(&p("x^2+y^2", &xy)).unwrap(), fin(1));
        assert_eq!(milnor_number(&p("x^3+y^4", &xy)).unwrap(), fin(6));
        assert_eq!(tjurina_number(&p("x^3+y^4", &xy)).unwrap(), fin(6));
    }

    #[test]
    fn d4_aggregate() {
        let g = germ_invariants(&p("x^2*y+y^3", &["x", "y"])).unwrap();
        assert_eq!(g.germ_dimension, 1);
        assert_eq!((g.mu, g.tau), (fin(4), fin(4)));
        assert!(g.isolated);
        let w = g.weighted_homogeneous_in_coords.unwrap();
        assert_eq!(w.weights, vec![1.into(), 1.into()]);
        assert_eq!(w.degree, 3.into());
    }

    #[test]
    fn node_and_non_isolated() {
        let g = germ_invariants(&p("x*y", &["x", "y"])).unwrap();
        assert_eq!((g.mu, g.tau, g.isolated), (fin(1), fin(1), true));
        let g = germ_invariants(&p("x^2", &["x", "y"])).unwrap();
        assert_eq!(g.mu, Codimension::Infinite);
        assert!(!g.isolated);
    }

    #[test]
    fn non_quasihomogeneous_has_smaller_tau() {
        // E12-type germ x^3 + y^7 + x y^5: mu = 12, tau = 11
        let g = germ_invariants(&p("x^3+y^7+x*y^5", &["x", "y"])).unwrap();
        assert_eq!((g.mu, g.tau), (fin(12), fin(11)));
        assert!(g.weighted_homogeneous_in_coords.is_none());
    }

    #[test]
    fn smooth_germ() {
        let f = p("x+y^2", &["x", "y"]);
        assert_eq!(milnor_number(&f).unwrap(), fin(0));
        assert_eq!(tjurina_number(&f).unwrap(), fin(0));
    }

    #[test]
    fn invalid_germs() {
        let ring = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(milnor_number(&Polynomial::zero(&ring)), Err(InvariantsError::ZeroPolynomial));
        assert_eq!(
            tjurina_number(&p("1+x^2+y^2", &["x", "y"])),
            Err(InvariantsError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn suspension() {
        let s = suspend(&p("x^3+y^4", &["x", "y"]), 2).unwrap();
        assert_eq!(s.new_variable, "z");
        assert_eq!(s.suspended, p("x^3+y^4+z^2", &["x", "y", "z"]));
        assert_eq!(s.suspended.restrict_to_zero("z").unwrap(), p("x^3+y^4", &["x", "y", "z"]));

        let s = suspend(&p("x^2+y^2", &["x", "y"]), 2).unwrap();
        assert_eq!(milnor_number(&s.suspended).unwrap(), fin(1));
        assert_eq!(tjurina_number(&s.suspended).unwrap(), fin(1));

        let s = suspend(&p("x^3+y^5", &["x", "y"]), 3).unwrap();
        assert_eq!(s.suspended, p("x^3+y^5+z^3", &["x", "y", "z"]));

        let s = suspend(&p("x^2+z^3+z1^2", &["x", "z", "z1"]), 2).unwrap();
        assert_eq!(s.new_variable, "z2");

        assert_eq!(
            suspend(&p("x^2", &["x"]), 1).unwrap_err(),
            InvariantsError::BadSuspensionExponent(1)
        );
    }
}
