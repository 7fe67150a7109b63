use germ_core::invariants::{find_positive_weights, germ_invariants, milnor_number, suspend, tjurina_number};
use germ_core::localalg::Codimension;
use germ_core::poly::{parse_polynomial, Monomial, Polynomial, Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::new(&["x", "y"]).unwrap()
}

fn term(i: u32, j: u32, c: i64) -> Polynomial {
    Polynomial::monomial(&ring(), Monomial::new(vec![i, j]), Rational::from_integer(BigInt::from(c)))
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

/// `x^a + y^b` plus terms strictly above the weighted degree.
fn semi_quasihomogeneous() -> impl Strategy<Value = (u32, u32, Polynomial)> {
    (2u32..8, 2u32..8, prop::collection::vec((0u32..9, 0u32..9, nonzero()), 0..3)).prop_map(|(a, b, extra)| {
        let mut f = term(a, 0, 1) + term(0, b, 1);
        for (i, j, c) in extra {
            if i * b + j * a > a * b {
                f = f + term(i, j, c);
            }
        }
        (a, b, f)
    })
}

fn finite(c: Codimension) -> u128 {
    c.finite().expect("isolated")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn semi_quasihomogeneous_milnor_number((a, b, f) in semi_quasihomogeneous()) {
        let mu = finite(milnor_number(&f).unwrap());
        prop_assert_eq!(mu, u128::from((a - 1) * (b - 1)));
        let tau = finite(tjurina_number(&f).unwrap());
        prop_assert!(tau <= mu);
        prop_assert!(tau >= 1 || mu == 0);
    }

    #[test]
    fn weighted_homogeneous_germs_have_mu_equal_tau(a in 2u32..8, b in 2u32..8, c in nonzero()) {
        // a monomial on the weighted line i/a + j/b = 1, if there is one
        let g = a.gcd(&b);
        let mut f = term(a, 0, 1) + term(0, b, 1);
        if g > 1 {
            f = f + term(a / g, b - b / g, c);
        }
        let inv = germ_invariants(&f).unwrap();
        prop_assume!(inv.isolated);
        prop_assert_eq!(inv.mu, inv.tau);
        prop_assert!(inv.weighted_homogeneous_in_coords.is_some());
    }

    #[test]
    fn invariant_under_scaling_and_linear_change((_a, _b, f) in semi_quasihomogeneous(), s in nonzero(), t in -2i64..=2) {
        let scaled = f.scale(&Rational::from_integer(BigInt::from(s)));
        prop_assert_eq!(milnor_number(&scaled).unwrap(), milnor_number(&f).unwrap());
        prop_assert_eq!(tjurina_number(&scaled).unwrap(), tjurina_number(&f).unwrap());
        // x -> x + t*y
        let x = term(1, 0, 1) + term(0, 1, t);
        let y = term(0, 1, 1);
        let mut changed = Polynomial::zero(&ring());
        for (m, c) in f.terms() {
            let e = m.exponents();
            changed = changed + x.checked_pow(e[0]).unwrap() * y.checked_pow(e[1]).unwrap() * Polynomial::constant(&ring(), c.clone());
        }
        prop_assert_eq!(milnor_number(&changed).unwrap(), milnor_number(&f).unwrap());
        prop_assert_eq!(tjurina_number(&changed).unwrap(), tjurina_number(&f).unwrap());
    }

    #[test]
    fn suspension_preserves_invariants((_a, _b, f) in semi_quasihomogeneous(), k in 2u32..4) {
        let s = suspend(&f, 2).unwrap().suspended;
        prop_assert_eq!(milnor_number(&s).unwrap(), milnor_number(&f).unwrap());
        prop_assert_eq!(tjurina_number(&s).unwrap(), tjurina_number(&f).unwrap());
        // z^k multiplies μ by k - 1
        let sk = suspend(&f, k).unwrap().suspended;
        prop_assert_eq!(
            finite(milnor_number(&sk).unwrap()),
            finite(milnor_number(&f).unwrap()) * u128::from(k - 1)
        );
    }

    #[test]
    fn found_weights_make_the_germ_homogeneous(terms in prop::collection::vec((0u32..6, 0u32..6, nonzero()), 1..5)) {
        let f = terms.into_iter().fold(Polynomial::zero(&ring()), |acc, (i, j, c)| acc + term(i, j, c));
        prop_assume!(!f.is_zero());
        if let Some(w) = find_positive_weights(&f) {
            let (ws, d) = w.as_rationals();
            prop_assert!(ws.iter().all(|q| *q > Rational::from_integer(0.into())));
            prop_assert!(f.is_weighted_homogeneous(&ws, &d).unwrap());
        }
    }
}

#[test]
fn non_isolated_germs_are_infinite() {
    for (f, vars) in [("x^2", &["x", "y"][..]), ("x^2*y^2", &["x", "y"]), ("x*y", &["x", "y", "z"])] {
        let f = parse_polynomial(f, vars).unwrap();
        let inv = germ_invariants(&f).unwrap();
        assert_eq!(inv.mu, Codimension::Infinite);
        assert_eq!(inv.tau, Codimension::Infinite);
        assert!(!inv.isolated);
    }
}
