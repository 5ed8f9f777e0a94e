//! Algebraic and dynamical invariants over the corpus.

use std::sync::Arc;

use hvn_core::chartable::{character_table, inner_product, permutation_character, Decomposition};
use hvn_core::corpus::{groups, random_group_copy, random_relabeling, transitive_actions};
use hvn_core::dynsys::{brute_force_iso, is_equivariant_bijection, point_spectrum, TopSystem};
use hvn_core::group::{group_is_isomorphic, normal_subgroups, quotient, PermutationGroup};
use num_rational::Ratio;
use proptest::prelude::*;

fn merge(into: &mut Decomposition, from: &Decomposition, scale: u64) {
    for (&k, &v) in from {
        *into.entry(k).or_default() += v * scale;
    }
}

#[test]
fn tensor_products_commute_and_associate() {
    for g in groups(24) {
        let t = character_table(&g.group).unwrap();
        let tt = t.tensor_table();
        let r = t.len();
        for i in 0..r {
            for j in 0..r {
                assert_eq!(tt[i][j], tt[j][i], "{}", g.name);
                let total: u64 = tt[i][j].iter().map(|(&k, &m)| m * t.degree(k)).sum();
                assert_eq!(total, t.degree(i) * t.degree(j));
            }
        }
        let triple = |a: usize, b: usize, c: usize, left: bool| {
            let mut out = Decomposition::new();
            let (first, last) = if left { (&tt[a][b], c) } else { (&tt[b][c], a) };
            for (&k, &m) in first {
                let next = if left { &tt[k][last] } else { &tt[last][k] };
                merge(&mut out, next, m);
            }
            out
        };
        let step = if r > 10 { 3 } else { 1 };
        for a in (0..r).step_by(step) {
            for b in 0..r {
                for c in (0..r).step_by(step) {
                    assert_eq!(triple(a, b, c, true), triple(a, b, c, false), "{}", g.name);
                }
            }
        }
    }
}

#[test]
fn conjugation_is_an_involution_fixing_real_rows() {
    for g in groups(168) {
        let t = character_table(&g.group).unwrap();
        for i in 0..t.len() {
            let c = t.conjugate_irrep(i).unwrap();
            assert_eq!(t.conjugate_irrep(c).unwrap(), i);
            assert_eq!(c == i, t.is_real_row(i), "{} row {i}", g.name);
        }
    }
}

#[test]
fn transitive_actions_have_one_fixed_direction() {
    for g in groups(24) {
        let t = character_table(&g.group).unwrap();
        for sys in transitive_actions(&g.group, 24).unwrap() {
            let chi = permutation_character(&t, &sys).unwrap();
            assert_eq!(inner_product(&t, &chi, &t.character(0)).unwrap(), Ratio::from_integer(1));
            assert_eq!(point_spectrum(&t, &sys).unwrap().dimension(), sys.points() as u64);
        }
    }
}

#[test]
fn quotient_orders() {
    for g in groups(24) {
        for n in normal_subgroups(&g.group).unwrap() {
            let (q, map) = quotient(&g.group, &n).unwrap();
            assert_eq!(q.order() * n.order(), g.group.order());
            assert_eq!(map.kernel(), n);
            q.check_invariants().unwrap();
        }
    }
}

#[test]
fn permutation_actions_are_faithful() {
    for pg in [
        PermutationGroup::symmetric(4).unwrap(),
        PermutationGroup::alternating(4).unwrap(),
        PermutationGroup::gl32(),
    ] {
        let sys = TopSystem::from_permutation_group(&pg);
        assert_eq!(sys.kernel().order(), 1);
        assert!(TopSystem::new(pg.group.clone(), sys.action_table().to_vec()).is_ok());
    }
    assert_eq!(PermutationGroup::gl32().group.order(), 168);
    assert_eq!(PermutationGroup::generate(2, &[vec![0, 1]]).unwrap().group.order(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(index in 0usize..1000, seed: u64) {
        let all = groups(24);
        let g = &all[index % all.len()];
        let copy = Arc::new(random_group_copy(&g.group, seed));
        prop_assert!(group_is_isomorphic(&g.group, &g.group).unwrap().is_some());
        let fwd = group_is_isomorphic(&g.group, &copy).unwrap();
        let back = group_is_isomorphic(&copy, &g.group).unwrap();
        prop_assert!(fwd.is_some() && back.is_some());
        prop_assert!(fwd.unwrap().is_isomorphism());
    }

    #[test]
    fn distinct_corpus_groups_are_not_isomorphic(i in 0usize..1000, j in 0usize..1000, seed: u64) {
        let all = groups(24);
        let (a, b) = (&all[i % all.len()], &all[j % all.len()]);
        let copy = Arc::new(random_group_copy(&b.group, seed));
        let iso = group_is_isomorphic(&a.group, &copy).unwrap();
        prop_assert_eq!(iso.is_some(), a.name == b.name);
        let back = group_is_isomorphic(&copy, &a.group).unwrap();
        prop_assert_eq!(back.is_some(), iso.is_some());
    }

    #[test]
    fn relabeled_systems_are_isomorphic_with_equal_spectra(index in 0usize..1000, which in 0usize..100, seed: u64) {
        let all = groups(24);
        let g = &all[index % all.len()];
        let acts = transitive_actions(&g.group, 16).unwrap();
        let sys = &acts[which % acts.len()];
        let moved = sys.relabeled(&random_relabeling(sys.points(), seed)).unwrap();
        let q = brute_force_iso(sys, &moved).unwrap();
        prop_assert!(q.as_ref().is_some_and(|q| is_equivariant_bijection(sys, &moved, q)));
        let t = character_table(&g.group).unwrap();
        prop_assert_eq!(point_spectrum(&t, sys).unwrap(), point_spectrum(&t, &moved).unwrap());
    }
}
