//! Built-in groups and systems used by the verification suites.

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dynsys::TopSystem;
use crate::group::{
    group_is_isomorphic, subgroups_up_to_conjugacy, FiniteGroup, GroupError, PermutationGroup,
};

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

/// Invariant-factor lists `d_1 | d_2 | ... ` with product `n`, all `d_i > 1`.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, smallest: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in smallest..=rest {
            if rest.is_multiple_of(d) && acc.last().is_none_or(|&l| d % l == 0) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    go(n, 2, &mut Vec::new(), &mut out);
    out.retain(|l| l.windows(2).all(|w| w[1] % w[0] == 0));
    out
}

fn product_of_cyclics(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    let mut g = FiniteGroup::cyclic(1)?;
    for &d in factors {
        g = FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(d)?)?;
    }
    Ok(g)
}

fn factor_name(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "C1".into();
    }
    factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
}

/// Every abelian group of order at most `max_order`, one per isomorphism type.
pub fn abelian_groups(max_order: usize) -> Vec<NamedGroup> {
    (1..=max_order)
        .flat_map(invariant_factor_lists)
        .map(|f| NamedGroup {
            name: factor_name(&f),
            group: Arc::new(product_of_cyclics(&f).expect("small abelian group")),
        })
        .collect()
}

fn nonabelian_candidates() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    let push = |out: &mut Vec<(String, FiniteGroup)>, name: String, g: FiniteGroup| out.push((name, g));
    let sym = |n| {
        let pg = PermutationGroup::symmetric(n).expect("symmetric group");
        Arc::try_unwrap(pg.group).unwrap_or_else(|a| (*a).clone())
    };
    push(&mut out, "S3".into(), sym(3));
    push(&mut out, "S4".into(), sym(4));
    let a4 = PermutationGroup::alternating(4).expect("alternating group");
    let a4 = (*a4.group).clone();
    push(&mut out, "A4".into(), a4.clone());
    for n in 4..=12 {
        push(&mut out, format!("D{n}"), FiniteGroup::dihedral(n).expect("dihedral"));
    }
    for m in 2..=6 {
        let name = if m == 2 { "Q8".into() } else { format!("Q{}", 4 * m) };
        push(&mut out, name, FiniteGroup::dicyclic(m).expect("dicyclic"));
    }
    let c = |n| FiniteGroup::cyclic(n).expect("cyclic");
    let prod = |a: &FiniteGroup, b: &FiniteGroup| FiniteGroup::direct_product(a, b).expect("product");
    let s3 = sym(3);
    let d4 = FiniteGroup::dihedral(4).expect("dihedral");
    let q8 = FiniteGroup::dicyclic(2).expect("dicyclic");
    push(&mut out, "S3xC3".into(), prod(&s3, &c(3)));
    push(&mut out, "S3xC4".into(), prod(&s3, &c(4)));
    push(&mut out, "S3xC2xC2".into(), prod(&prod(&s3, &c(2)), &c(2)));
    push(&mut out, "D4xC2".into(), prod(&d4, &c(2)));
    push(&mut out, "D4xC3".into(), prod(&d4, &c(3)));
    push(&mut out, "Q8xC2".into(), prod(&q8, &c(2)));
    push(&mut out, "Q8xC3".into(), prod(&q8, &c(3)));
    push(&mut out, "A4xC2".into(), prod(&a4, &c(2)));
    push(&mut out, "Q12xC2".into(), prod(&FiniteGroup::dicyclic(3).expect("dicyclic"), &c(2)));
    push(&mut out, "D5xC2".into(), prod(&FiniteGroup::dihedral(5).expect("dihedral"), &c(2)));
    push(&mut out, "S3xC2".into(), prod(&s3, &c(2)));
    out
}

/// Corpus groups of order at most `max_order`, ordered by order and then
/// construction order, without isomorphic repeats. `GL(3,2)` is included
/// when `max_order >= 168`.
pub fn groups(max_order: usize) -> Vec<NamedGroup> {
    all_groups().iter().filter(|g| g.group.order() <= max_order).cloned().collect()
}

fn all_groups() -> &'static [NamedGroup] {
    static ALL: OnceLock<Vec<NamedGroup>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out: Vec<NamedGroup> = abelian_groups(24);
        for (name, g) in nonabelian_candidates() {
            if g.order() > 24 {
                continue;
            }
            let g = Arc::new(g);
            let dup = out.iter().any(|h| {
                h.group.order() == g.order()
                    && group_is_isomorphic(&h.group, &g).expect("small groups").is_some()
            });
            if !dup {
                out.push(NamedGroup { name, group: g });
            }
        }
        out.push(NamedGroup { name: "GL(3,2)".into(), group: PermutationGroup::gl32().group });
        out.sort_by_key(|g| g.group.order());
        out
    })
}

/// The corpus name of a group isomorphic to `g`.
pub fn identify(g: &Arc<FiniteGroup>) -> Option<String> {
    all_groups()
        .iter()
        .filter(|h| h.group.order() == g.order())
        .find(|h| group_is_isomorphic(&h.group, g).ok().flatten().is_some())
        .map(|h| h.name.clone())
        .or_else(|| {
            if g.is_abelian() {
                abelian_name(g)
            } else {
                None
            }
        })
}

fn abelian_name(g: &Arc<FiniteGroup>) -> Option<String> {
    invariant_factor_lists(g.order()).into_iter().find_map(|f| {
        let h = Arc::new(product_of_cyclics(&f).ok()?);
        group_is_isomorphic(&h, g).ok().flatten().map(|_| factor_name(&f))
    })
}

/// One coset action per conjugacy class of subgroups, i.e. every transitive
/// action up to isomorphism, limited to `max_points` points.
pub fn transitive_actions(group: &Arc<FiniteGroup>, max_points: usize) -> Result<Vec<TopSystem>, GroupError> {
    Ok(subgroups_up_to_conjugacy(group)?
        .iter()
        .filter(|s| s.index() <= max_points)
        .map(|s| TopSystem::coset_action(group.clone(), s))
        .collect())
}

/// A uniformly random point relabeling, reproducible from `seed`.
pub fn random_relabeling(points: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..points).collect();
    perm.shuffle(&mut rng);
    perm
}

/// A random isomorphic copy of `g` with the identity kept at 0.
pub fn random_group_copy(g: &FiniteGroup, seed: u64) -> FiniteGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (1..g.order()).collect();
    perm.shuffle(&mut rng);
    let perm: Vec<usize> = std::iter::once(0).chain(perm).collect();
    g.relabeled(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_counts() {
        let count = |n| invariant_factor_lists(n).len();
        assert_eq!((count(1), count(8), count(16), count(24), count(32)), (1, 3, 5, 3, 7));
        assert_eq!(abelian_groups(8).len(), 1 + 1 + 1 + 2 + 1 + 1 + 1 + 3);
    }

    #[test]
    fn corpus_is_duplicate_free() {
        let all = groups(24);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if a.group.order() == b.group.order() {
                    assert!(group_is_isomorphic(&a.group, &b.group).unwrap().is_none(), "{} {}", a.name, b.name);
                }
            }
        }
        let non_abelian_24: Vec<&str> = all
            .iter()
            .filter(|g| g.group.order() == 24 && !g.group.is_abelian())
            .map(|g| g.name.as_str())
            .collect();
        assert_eq!(non_abelian_24.len(), 9, "{non_abelian_24:?}");
        assert_eq!(groups(168).last().unwrap().name, "GL(3,2)");
    }

    #[test]
    fn identification() {
        assert_eq!(identify(&Arc::new(FiniteGroup::cyclic(6).unwrap())).as_deref(), Some("C6"));
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = PermutationGroup::symmetric(3).unwrap().group;
        assert_eq!(identify(&Arc::new(FiniteGroup::direct_product(&s3, &c2).unwrap())).as_deref(), Some("D6"));
        assert_eq!(identify(&Arc::new(FiniteGroup::cyclic(32).unwrap())).as_deref(), Some("C32"));
        let copy = random_group_copy(&FiniteGroup::dihedral(4).unwrap(), 7);
        assert_eq!(identify(&Arc::new(copy)).as_deref(), Some("D4"));
    }

    #[test]
    fn actions() {
        let s3 = PermutationGroup::symmetric(3).unwrap().group;
        let acts = transitive_actions(&s3, 24).unwrap();
        let sizes: Vec<usize> = acts.iter().map(TopSystem::points).collect();
        assert_eq!(sizes, vec![6, 3, 2, 1]);
        assert_eq!(random_relabeling(5, 3), random_relabeling(5, 3));
    }
}
