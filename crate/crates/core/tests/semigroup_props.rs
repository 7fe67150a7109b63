use germ_core::semigroup::{
    branch_milnor, certify_plane_branch, monomial_curve_equations, semigroup_from_generators,
};
use num_integer::Integer;
use proptest::prelude::*;

/// Membership by dynamic programming over `0..=limit`.
fn brute_members(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for x in 1..=limit {
        member[x as usize] = gens.iter().any(|&g| g <= x && member[(x - g) as usize]);
    }
    member
}

fn coprime_generators() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..25, 2..5).prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| a.gcd(&b)) == 1)
}

proptest! {
    #[test]
    fn gaps_match_brute_force(gens in coprime_generators()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let c = s.conductor();
        let member = brute_members(&gens, c + 30);
        let gaps: Vec<u64> = (0..=c + 30).filter(|&x| !member[x as usize]).collect();
        prop_assert_eq!(s.gaps(), gaps.as_slice());
        prop_assert_eq!(s.delta(), gaps.len() as u64);
        prop_assert_eq!(c, gaps.last().map_or(0, |g| g + 1));
        for x in 0..=c + 30 {
            prop_assert_eq!(s.contains(x), member[x as usize]);
        }
    }

    #[test]
    fn minimal_generators_span_the_same_semigroup(gens in coprime_generators()) {
        let s = semigroup_from_generators(&gens).unwrap();
        let min = s.minimal_generators();
        let t = semigroup_from_generators(&min).unwrap();
        prop_assert_eq!(s.gaps(), t.gaps());
        for (i, &g) in min.iter().enumerate() {
            let others: Vec<u64> = min.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &h)| h).collect();
            prop_assert!(!brute_members(&others, g)[g as usize]);
        }
    }

    #[test]
    fn two_generator_semigroups_are_plane_branches(a in 2u64..40, b in 2u64..40) {
        prop_assume!(a.gcd(&b) == 1);
        let s = semigroup_from_generators(&[a, b]).unwrap();
        prop_assert_eq!(s.delta(), (a - 1) * (b - 1) / 2);
        prop_assert_eq!(branch_milnor(&s).unwrap(), (a - 1) * (b - 1));
        let cert = certify_plane_branch(&[a, b]).unwrap();
        let c = cert.certificate.expect("two coprime generators");
        prop_assert!(monomial_curve_equations(&c).vanish_on(&c.generators));
    }

    #[test]
    fn certified_semigroups_are_symmetric(gens in coprime_generators()) {
        let cert = certify_plane_branch(&gens).unwrap();
        if let Some(c) = cert.certificate {
            let s = semigroup_from_generators(&c.generators).unwrap();
            let cond = s.conductor();
            prop_assert_eq!(cond, 2 * s.delta());
            for x in 0..cond {
                prop_assert!(s.contains(x) != s.contains(cond - 1 - x));
            }
            prop_assert!(monomial_curve_equations(&c).vanish_on(&c.generators));
        }
    }
}
