mod common;

use std::collections::BTreeSet;

use commcrit::arith::prime_divisors;
use commcrit::permcore::{conjugacy_classes, conjugate_subgroups, quotient};
use commcrit::structure::{
    derived_series, fitting_subgroup, gamma_infinity, is_nilpotent, is_soluble,
    lower_fitting_series, normal_subgroups, p_core, p_prime_core, sylow_basis, sylow_subgroup,
};
use commcrit::DEFAULT_CAP;

use common::Set;

#[test]
fn element_enumeration_matches_closure() {
    for (name, g) in common::zoo() {
        let oracle = common::elements(&g);
        let got: Set = g.elements(DEFAULT_CAP).unwrap().iter().cloned().collect();
        assert_eq!(got, oracle, "{name}");
        assert_eq!(g.order() as usize, oracle.len(), "{name}");
    }
}

#[test]
fn classes_match_and_divide_order() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle: BTreeSet<Set> = common::classes(&all).into_iter().collect();
        let got: BTreeSet<Set> = conjugacy_classes(&g, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|c| c.iter().cloned().collect())
            .collect();
        assert_eq!(got, oracle, "{name}");
        assert!(got.iter().all(|c| all.len() % c.len() == 0), "{name}");
    }
}

#[test]
fn normal_subgroups_are_unions_of_classes() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle = common::normal_subgroups(&all);
        let got: Vec<Set> = normal_subgroups(&g, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(common::set_of)
            .collect();
        assert_eq!(got, oracle, "{name}");
    }
}

#[test]
fn derived_series_matches_commutator_closure() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle: Vec<usize> = common::derived_series(g.degree(), &all).iter().map(Set::len).collect();
        let got: Vec<usize> = derived_series(&g).unwrap().orders().iter().map(|&o| o as usize).collect();
        if got.len() == oracle.len() + 1 {
            // a stabilized nontrivial series repeats its last term
            assert_eq!(got[..oracle.len()], oracle[..], "{name}");
            assert_eq!(got[oracle.len()], *oracle.last().unwrap(), "{name}");
        } else {
            assert_eq!(got, oracle, "{name}");
        }
        assert_eq!(is_soluble(&g).unwrap(), common::is_soluble(g.degree(), &all), "{name}");
        assert_eq!(is_nilpotent(&g).unwrap(), common::is_nilpotent(g.degree(), &all), "{name}");
    }
}

#[test]
fn fitting_subgroup_is_largest_normal_nilpotent() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle = common::largest_normal_where(&all, |n| common::is_nilpotent(g.degree(), n));
        let got = common::set_of(&fitting_subgroup(&g, DEFAULT_CAP).unwrap());
        assert_eq!(got, oracle, "{name}");
    }
}

#[test]
fn p_cores_match_oracle() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        for p in prime_divisors(g.order()) {
            let op = common::largest_normal_where(&all, |n| common::is_p_power(n.len() as u64, p));
            assert_eq!(common::set_of(&p_core(&g, p, DEFAULT_CAP).unwrap()), op, "{name} O_{p}");
            let opp = common::largest_normal_where(&all, |n| n.len() as u64 % p != 0);
            assert_eq!(
                common::set_of(&p_prime_core(&g, p, DEFAULT_CAP).unwrap()),
                opp,
                "{name} O_{p}'"
            );
        }
    }
}

#[test]
fn fitting_height_matches_shortest_nilpotent_series() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle = common::fitting_height(g.degree(), &all);
        let got = lower_fitting_series(&g).unwrap().fitting_height;
        assert_eq!(got, oracle, "{name}");
    }
}

#[test]
fn nilpotent_residual_is_least_normal_with_nilpotent_quotient() {
    for (name, g) in common::zoo() {
        let all = common::elements(&g);
        let oracle = common::normal_subgroups(&all)
            .into_iter()
            .find(|n| common::quotient_nilpotent(g.degree(), &all, n))
            .unwrap();
        assert_eq!(common::set_of(&gamma_infinity(&g).unwrap()), oracle, "{name}");
    }
}

#[test]
fn sylow_subgroups_satisfy_sylow_theorems() {
    for (name, g) in common::zoo() {
        for p in prime_divisors(g.order()) {
            let s = sylow_subgroup(&g, p, DEFAULT_CAP).unwrap();
            assert_eq!(s.order(), common::p_part(g.order(), p), "{name} p={p}");
            assert!(s.is_subgroup_of(&g));
            let n_p = conjugate_subgroups(&g, &s, DEFAULT_CAP).unwrap().len() as u64;
            assert_eq!(n_p % p, 1, "{name} p={p}");
            assert_eq!(g.order() % n_p, 0, "{name} p={p}");
        }
    }
}

#[test]
fn quotient_orders_multiply() {
    for (name, g) in common::zoo() {
        for n in normal_subgroups(&g, DEFAULT_CAP).unwrap() {
            let q = quotient(&g, &n, DEFAULT_CAP).unwrap();
            assert_eq!(q.group().order() * n.order(), g.order(), "{name} |N|={}", n.order());
        }
    }
}

#[test]
fn basis_normalizer_covers_nilpotent_residual() {
    for (name, g) in common::zoo() {
        if !is_soluble(&g).unwrap() {
            continue;
        }
        let b = sylow_basis(&g, 11, DEFAULT_CAP).unwrap();
        let t = common::set_of(&b.normalizer);
        assert!(common::is_nilpotent(g.degree(), &t), "{name}");
        let resid = common::set_of(&gamma_infinity(&g).unwrap());
        let product: Set = t.iter().flat_map(|x| resid.iter().map(move |y| x.mul(y))).collect();
        assert_eq!(product.len() as u64, g.order(), "{name}: G = T·γ∞(G)");
    }
}

#[test]
fn basis_normalizer_maps_onto_a_basis_normalizer_of_quotients() {
    // the image of T in G/N is the normalizer of the image basis, which is
    // itself a Sylow basis of G/N
    for (name, g) in common::zoo() {
        if !is_soluble(&g).unwrap() {
            continue;
        }
        let b = sylow_basis(&g, 5, DEFAULT_CAP).unwrap();
        for n in normal_subgroups(&g, DEFAULT_CAP).unwrap() {
            let q = quotient(&g, &n, DEFAULT_CAP).unwrap();
            let gq = q.group();
            let t_bar = q.image(&b.normalizer).unwrap();
            let mut normalizer = gq.clone();
            for s in b.basis.values() {
                let s_bar = q.image(s).unwrap();
                normalizer = commcrit::permcore::intersection(
                    &normalizer,
                    &commcrit::permcore::normalizer(gq, &s_bar, DEFAULT_CAP).unwrap(),
                    DEFAULT_CAP,
                )
                .unwrap();
            }
            assert_eq!(t_bar, normalizer, "{name} |N|={}", n.order());
        }
    }
}
