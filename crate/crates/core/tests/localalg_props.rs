use germ_core::localalg::{
    mora_normal_form, monomial_ideal_codimension, quotient_codimension, standard_basis, standard_basis_with,
    BasisOptions, Codimension, LocalOrder,
};
use germ_core::poly::{Monomial, Polynomial, Rational, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::new(&["x", "y"]).unwrap()
}

fn term_list(max_exp: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp), prop_oneof![-3i64..=-1, 1i64..=3]), len)
}

fn build(terms: Vec<((u32, u32), i64)>) -> Polynomial {
    Polynomial::from_terms(
        &ring(),
        terms
            .into_iter()
            .map(|((a, b), c)| (Monomial::new(vec![a, b]), Rational::from_integer(BigInt::from(c)))),
    )
}

fn germ() -> impl Strategy<Value = Polynomial> {
    term_list(5, 1..5).prop_map(build).prop_filter("vanishes at origin", |f| {
        !f.is_zero() && f.constant_term() == Rational::from_integer(0.into())
    })
}

fn multiplier() -> impl Strategy<Value = Polynomial> {
    term_list(2, 0..3).prop_map(build)
}

fn pure_power(var: usize, e: u32, c: i64) -> Polynomial {
    Polynomial::monomial(&ring(), Monomial::var_power(2, var, e), Rational::from_integer(BigInt::from(c)))
}

/// Ideals of finite colength: two random germs, each plus a pure power
/// with a tail, so that `x^a` and `y^b` have leading terms in the ideal.
fn ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    (germ(), germ(), 2u32..7, 2u32..7, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(f, g, a, b, c)| {
        vec![
            pure_power(0, a, c) + x_times(&f),
            pure_power(1, b, 1) + x_times(&g) * pure_power(1, 1, 1),
            f * g,
        ]
    })
}

fn x_times(f: &Polynomial) -> Polynomial {
    pure_power(0, 1, 1) * pure_power(1, 1, 1) * f.clone()
}

/// Jacobian ideals of `x^a + y^b` plus random terms.
fn jacobian() -> impl Strategy<Value = Vec<Polynomial>> {
    (2u32..7, 2u32..7, germ()).prop_map(|(a, b, h)| {
        let f = pure_power(0, a, 1) + pure_power(1, b, 1) + x_times(&h);
        f.gradient()
    })
}

fn any_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    prop_oneof![ideal(), jacobian()].prop_filter("some nonzero generator", |g| g.iter().any(|p| !p.is_zero()))
}

fn order() -> LocalOrder {
    LocalOrder::for_ring(&ring())
}

/// Count of monomials outside a monomial ideal in two variables by direct scan.
fn brute_staircase(gens: &[Vec<u32>], box_size: u32) -> Option<u128> {
    let inside = |a: u32, b: u32| gens.iter().any(|g| g[0] <= a && g[1] <= b);
    if (0..=box_size).any(|b| !inside(box_size, b)) || (0..=box_size).any(|a| !inside(a, box_size)) {
        return None;
    }
    let mut n = 0;
    for a in 0..box_size {
        for b in 0..box_size {
            if !inside(a, b) {
                n += 1;
            }
        }
    }
    Some(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_reduce_to_zero(gens in any_ideal()) {
        let sb = standard_basis(&gens, &order()).unwrap();
        for p in &gens {
            prop_assert!(mora_normal_form(p, sb.generators(), &order()).unwrap().is_zero());
        }
    }

    #[test]
    fn ideal_members_reduce_to_zero(gens in any_ideal(), a in multiplier(), b in multiplier()) {
        let sb = standard_basis(&gens, &order()).unwrap();
        let member = a * gens[0].clone() + b * gens[1].clone();
        prop_assert!(mora_normal_form(&member, sb.generators(), &order()).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_reduced(gens in any_ideal(), p in germ()) {
        let sb = standard_basis(&gens, &order()).unwrap();
        let r = mora_normal_form(&p, sb.generators(), &order()).unwrap();
        if let Some((lm, _)) = r.leading_term() {
            prop_assert!(sb.leading_ideal().iter().all(|m| !m.divides(lm)));
        }
    }

    #[test]
    fn finite_colength_is_detected(gens in ideal()) {
        let sb = standard_basis(&gens, &order()).unwrap();
        prop_assert!(quotient_codimension(&sb).is_finite());
    }

    #[test]
    fn criteria_do_not_change_the_result(gens in any_ideal()) {
        let on = standard_basis_with(&gens, &order(), &BasisOptions { deadline: None, criteria: true }).unwrap();
        let off = standard_basis_with(&gens, &order(), &BasisOptions { deadline: None, criteria: false }).unwrap();
        let mut a = on.leading_ideal().to_vec();
        let mut b = off.leading_ideal().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(quotient_codimension(&on), quotient_codimension(&off));
    }

    #[test]
    fn generator_order_is_irrelevant(gens in any_ideal()) {
        let a = standard_basis(&gens, &order()).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = standard_basis(&rev, &order()).unwrap();
        prop_assert_eq!(quotient_codimension(&a), quotient_codimension(&b));
    }

    #[test]
    fn extending_matches_recomputing(gens in any_ideal(), extra in germ()) {
        let base = standard_basis(&gens, &order()).unwrap();
        let extended = base.extend(std::slice::from_ref(&extra), &BasisOptions::default()).unwrap();
        let mut all = gens.clone();
        all.push(extra);
        let direct = standard_basis(&all, &order()).unwrap();
        prop_assert_eq!(quotient_codimension(&extended), quotient_codimension(&direct));
    }

    #[test]
    fn monomial_ideals_use_the_staircase(gens in prop::collection::vec((0u32..7, 0u32..7), 1..5)) {
        let mons: Vec<Monomial> = gens.iter().map(|&(a, b)| Monomial::new(vec![a, b])).collect();
        let exps: Vec<Vec<u32>> = gens.iter().map(|&(a, b)| vec![a, b]).collect();
        let expect = brute_staircase(&exps, 8).map_or(Codimension::Infinite, Codimension::Finite);
        prop_assert_eq!(monomial_ideal_codimension(&mons, 2), expect);
        let polys: Vec<Polynomial> = mons
            .iter()
            .map(|m| Polynomial::monomial(&ring(), m.clone(), Rational::from_integer(1.into())))
            .collect();
        let sb = standard_basis(&polys, &order()).unwrap();
        prop_assert_eq!(quotient_codimension(&sb), expect);
    }

    #[test]
    fn unit_multiples_generate_the_same_ideal(gens in any_ideal(), u in multiplier()) {
        let one = Polynomial::constant(&ring(), Rational::from_integer(1.into()));
        let unit = one + pure_power(0, 1, 1) * u;
        let mut scaled = gens.clone();
        scaled[0] = unit * scaled[0].clone();
        let a = standard_basis(&gens, &order()).unwrap();
        let b = standard_basis(&scaled, &order()).unwrap();
        prop_assert_eq!(quotient_codimension(&a), quotient_codimension(&b));
    }
}

#[test]
fn non_isolated_ideals() {
    let v = ["x", "y"];
    let p = |s: &str| germ_core::poly::parse_polynomial(s, &v).unwrap();
    for (gens, members, outsider) in [
        (vec!["x^2", "x*y"], vec!["x^3*y - 2*x^2", "x*y^7"], "y^5"),
        (vec!["x - x^2", "x*y + x^3"], vec!["x", "x*y^4"], "y^5"),
        (vec!["y^2 + x^2*y", "x*y^2"], vec!["y^3 + x^2*y^2", "y^3"], "x^5"),
    ] {
        let gens: Vec<Polynomial> = gens.into_iter().map(p).collect();
        let sb = standard_basis(&gens, &order()).unwrap();
        assert_eq!(quotient_codimension(&sb), Codimension::Infinite);
        for m in members {
            assert!(mora_normal_form(&p(m), sb.generators(), &order()).unwrap().is_zero(), "{m}");
        }
        assert!(!mora_normal_form(&p(outsider), sb.generators(), &order()).unwrap().is_zero());
    }
}

#[test]
fn generators_erased_by_truncation_are_kept() {
    let v = ["x", "y"];
    let p = |s: &str| germ_core::poly::parse_polynomial(s, &v).unwrap();
    let gens = vec![p("-2*x"), p("-2*y - y^2")];
    let sb = standard_basis(&gens, &order()).unwrap();
    assert_eq!(quotient_codimension(&sb), Codimension::Finite(1));
    for g in &gens {
        assert!(mora_normal_form(g, sb.generators(), &order()).unwrap().is_zero());
    }
}
