use std::sync::Arc;

use super::{DynError, TopSystem};
use crate::caps::Caps;
use crate::chartable::ClassData;
use crate::group::{subgroups_up_to_conjugacy_capped, FiniteGroup, Subgroup};

/// `q` is a bijection with `q(φ_t x) = ψ_t q(x)` for all `t, x`.
pub fn is_equivariant_bijection(a: &TopSystem, b: &TopSystem, q: &[usize]) -> bool {
    if a.points() != b.points() || q.len() != a.points() {
        return false;
    }
    let mut hit = vec![false; b.points()];
    for &y in q {
        if y >= b.points() || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    a.group()
        .elements()
        .all(|t| (0..a.points()).all(|x| q[a.apply(t, x)] == b.apply(t, q[x])))
}

pub fn brute_force_iso(a: &TopSystem, b: &TopSystem) -> Result<Option<Vec<usize>>, DynError> {
    brute_force_iso_capped(a, b, Caps::global())
}

/// Searches for an equivariant bijection.
///
/// A map is fixed by its values on one point per orbit; each candidate
/// value is propagated along the orbit and rejected on the first clash.
/// Candidates for an orbit representative must have the same stabilizer.
/// Non-transitive inputs are limited to `caps.brute_force_points` points.
pub fn brute_force_iso_capped(
    a: &TopSystem,
    b: &TopSystem,
    caps: &Caps,
) -> Result<Option<Vec<usize>>, DynError> {
    equivariant_search(a, b, caps, &|_, _| true)
}

/// Backtracking search restricted to pairs with `compatible(x, y)`.
pub(crate) fn equivariant_search(
    a: &TopSystem,
    b: &TopSystem,
    caps: &Caps,
    compatible: &dyn Fn(usize, usize) -> bool,
) -> Result<Option<Vec<usize>>, DynError> {
    a.check_same_group(b)?;
    if a.points() != b.points() {
        return Ok(None);
    }
    let orbits = a.orbits();
    if orbits.len() > 1 && a.points() > caps.brute_force_points {
        return Err(DynError::CapExceeded { points: a.points(), cap: caps.brute_force_points });
    }
    if orbits.len() != b.orbits().len() {
        return Ok(None);
    }
    let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let stabs: Vec<Subgroup> = reps.iter().map(|&x| a.stabilizer(x)).collect();
    let b_stabs: Vec<Subgroup> = (0..b.points()).map(|y| b.stabilizer(y)).collect();
    let mut q = vec![usize::MAX; a.points()];
    let mut used = vec![false; b.points()];
    let ctx = Search { a, b, reps: &reps, stabs: &stabs, b_stabs: &b_stabs, compatible };
    if ctx.run(0, &mut q, &mut used) {
        debug_assert!(is_equivariant_bijection(a, b, &q));
        Ok(Some(q))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    a: &'a TopSystem,
    b: &'a TopSystem,
    reps: &'a [usize],
    stabs: &'a [Subgroup],
    b_stabs: &'a [Subgroup],
    compatible: &'a dyn Fn(usize, usize) -> bool,
}

impl Search<'_> {
    fn run(&self, depth: usize, q: &mut [usize], used: &mut [bool]) -> bool {
        let (a, b) = (self.a, self.b);
        if depth == self.reps.len() {
            return true;
        }
        let x = self.reps[depth];
        for y in 0..b.points() {
            if used[y] || self.b_stabs[y] != self.stabs[depth] {
                continue;
            }
            let mut assigned = Vec::new();
            let mut ok = true;
            for t in a.group().elements() {
                let (ax, by) = (a.apply(t, x), b.apply(t, y));
                if q[ax] == usize::MAX {
                    if used[by] || !(self.compatible)(ax, by) {
                        ok = false;
                        break;
                    }
                    q[ax] = by;
                    used[by] = true;
                    assigned.push(ax);
                } else if q[ax] != by {
                    ok = false;
                    break;
                }
            }
            if ok && self.run(depth + 1, q, used) {
                return true;
            }
            for ax in assigned {
                used[q[ax]] = false;
                q[ax] = usize::MAX;
            }
        }
        false
    }
}

/// Two transitive systems with equal permutation characters that are not
/// isomorphic.
#[derive(Debug, Clone)]
pub struct GassmannPair {
    pub first: Subgroup,
    pub second: Subgroup,
    pub a: TopSystem,
    pub b: TopSystem,
    /// Fixed-point count per conjugacy class, shared by both systems.
    pub character: Vec<usize>,
}

/// First pair of non-conjugate subgroups whose coset actions share a
/// permutation character but are not isomorphic, scanning by increasing
/// index.
pub fn gassmann_search(group: &Arc<FiniteGroup>, caps: &Caps) -> Result<Option<GassmannPair>, DynError> {
    let mut subs = subgroups_up_to_conjugacy_capped(group, caps)?;
    subs.sort_by_key(|s| std::cmp::Reverse(s.order()));
    let classes = ClassData::new(group);
    let character = |sys: &TopSystem| -> Vec<usize> {
        classes.classes.iter().map(|c| sys.fixed_points(c.representative)).collect()
    };
    let systems: Vec<TopSystem> = subs.iter().map(|s| TopSystem::coset_action(group.clone(), s)).collect();
    let chars: Vec<Vec<usize>> = systems.iter().map(character).collect();
    for i in 0..subs.len() {
        for j in (i + 1)..subs.len() {
            if subs[i].order() != subs[j].order() || chars[i] != chars[j] {
                continue;
            }
            if brute_force_iso_capped(&systems[i], &systems[j], caps)?.is_none() {
                return Ok(Some(GassmannPair {
                    first: subs[i].clone(),
                    second: subs[j].clone(),
                    a: systems[i].clone(),
                    b: systems[j].clone(),
                    character: chars[i].clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;

    #[test]
    fn relabeled_copies() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let reg = TopSystem::regular(g.clone());
        assert_eq!(brute_force_iso(&reg, &reg).unwrap(), Some(vec![0, 1, 2, 3]));
        let moved = reg.relabeled(&[2, 3, 1, 0]).unwrap();
        let q = brute_force_iso(&reg, &moved).unwrap().unwrap();
        assert!(is_equivariant_bijection(&reg, &moved, &q));
        let half = TopSystem::coset_action(g.clone(), &Subgroup::generated(&g, &[2]));
        assert_eq!(brute_force_iso(&reg, &half).unwrap(), None);
    }

    #[test]
    fn non_transitive() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let half = TopSystem::coset_action(g.clone(), &Subgroup::generated(&g, &[2]));
        let one = TopSystem::trivial(g.clone(), 1).unwrap();
        let a = half.disjoint_union(&one).unwrap().disjoint_union(&half).unwrap();
        let b = one.disjoint_union(&half).unwrap().disjoint_union(&half).unwrap();
        let q = brute_force_iso(&a, &b).unwrap().unwrap();
        assert!(is_equivariant_bijection(&a, &b, &q));
        let c = TopSystem::trivial(g.clone(), 5).unwrap();
        assert_eq!(brute_force_iso(&a, &c).unwrap(), None);
        let big = TopSystem::trivial(g, 17).unwrap();
        assert!(matches!(brute_force_iso(&big, &big), Err(DynError::CapExceeded { .. })));
    }

    #[test]
    fn gassmann() {
        let s3 = PermutationGroup::symmetric(3).unwrap().group;
        assert!(gassmann_search(&s3, &Caps::default()).unwrap().is_none());
        let c8 = Arc::new(FiniteGroup::cyclic(8).unwrap());
        assert!(gassmann_search(&c8, &Caps::default()).unwrap().is_none());
        let gl = PermutationGroup::gl32().group;
        let pair = gassmann_search(&gl, &Caps::default()).unwrap().unwrap();
        assert_eq!((pair.a.points(), pair.b.points()), (7, 7));
        assert_eq!(brute_force_iso(&pair.a, &pair.b).unwrap(), None);
    }
}
