use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{FiniteGroup, GroupError, GroupHom};
use crate::caps::Caps;

/// A subgroup stored as a sorted member list plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Size first, then lexicographic member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Subgroup {
    /// Validates that `members` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self, GroupError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= group.order()) {
            return Err(GroupError::InvalidSubgroup(format!("element {bad} out of range")));
        }
        let sub = Subgroup::from_sorted_unchecked(group.order(), members.into_iter().collect());
        if !sub.contains(0) {
            return Err(GroupError::InvalidSubgroup("missing identity".into()));
        }
        for &a in &sub.members {
            if !sub.contains(group.inv(a)) {
                return Err(GroupError::InvalidSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &sub.members {
                if !sub.contains(group.mul(a, b)) {
                    return Err(GroupError::InvalidSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        if !group.order().is_multiple_of(sub.order()) {
            return Err(GroupError::InvalidSubgroup("order does not divide group order".into()));
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { mask, members }
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { mask, members }
    }

    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup::from_mask(group.generate_mask(gens))
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(group.order(), vec![0])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(group.order(), group.elements().collect())
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order() / self.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Subgroup::from_sorted_unchecked(self.parent_order(), members)
    }

    pub fn join(&self, group: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = group.greedy_generators_of(self);
        gens.extend(group.greedy_generators_of(other));
        Subgroup::generated(group, &gens)
    }

    /// An element `g` and a member `h` with `g h g^-1` outside, if any.
    pub fn normality_witness(&self, group: &FiniteGroup) -> Option<(usize, usize)> {
        for g in group.greedy_generators() {
            for &h in &self.members {
                if !self.contains(group.conjugate(g, h)) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        self.normality_witness(group).is_none()
    }

    /// `x H x^-1`.
    pub fn conjugate_by(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| group.conjugate(x, h)).collect();
        members.sort_unstable();
        Subgroup::from_sorted_unchecked(self.parent_order(), members)
    }

    /// The lexicographically least conjugate.
    pub fn canonical_conjugate(&self, group: &FiniteGroup) -> Subgroup {
        group
            .elements()
            .map(|x| self.conjugate_by(group, x))
            .min()
            .expect("nonempty group")
    }

    pub fn is_conjugate_to(&self, group: &FiniteGroup, other: &Subgroup) -> bool {
        self.order() == other.order()
            && group.elements().any(|x| self.conjugate_by(group, x) == *other)
    }

    /// Left cosets `xH`, ordered by least element; `H` itself comes first.
    pub fn left_cosets(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; group.order()];
        let mut cosets = Vec::with_capacity(self.index());
        for x in group.elements() {
            if assigned[x] {
                continue;
            }
            let mut coset: Vec<usize> = self.members.iter().map(|&h| group.mul(x, h)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

impl FiniteGroup {
    /// A generating set of `sub`, chosen greedily among its members.
    pub fn greedy_generators_of(&self, sub: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.generate_mask(&gens);
        let mut size = 1;
        while size < sub.order() {
            let g = *sub
                .members()
                .iter()
                .find(|&&m| !mask[m])
                .expect("subgroup larger than generated part");
            gens.push(g);
            mask = self.generate_mask(&gens);
            size = mask.iter().filter(|&&m| m).count();
        }
        gens
    }
}

/// A conjugacy class with its least member as representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes sorted by (size, least member); the identity class is first.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for x in group.elements() {
        if seen[x] {
            continue;
        }
        let members: BTreeSet<usize> = group.elements().map(|g| group.conjugate(g, x)).collect();
        for &m in &members {
            seen[m] = true;
        }
        classes.push(ConjugacyClass {
            representative: x,
            members: members.into_iter().collect(),
        });
    }
    classes.sort_by_key(|c| (c.size(), c.representative));
    classes
}

fn check_cap(group: &FiniteGroup, caps: &Caps) -> Result<(), GroupError> {
    if group.order() > caps.exhaustive_order {
        return Err(GroupError::CapExceeded {
            order: group.order(),
            cap: caps.exhaustive_order,
        });
    }
    Ok(())
}

pub fn normal_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    normal_subgroups_capped(group, Caps::global())
}

/// All normal subgroups, sorted by size then member list.
///
/// Every normal subgroup is the join of the normal closures of the classes
/// it contains, so closing the class closures under joins finds them all.
pub fn normal_subgroups_capped(group: &FiniteGroup, caps: &Caps) -> Result<Vec<Subgroup>, GroupError> {
    check_cap(group, caps)?;
    let closures: Vec<Subgroup> = conjugacy_classes(group)
        .iter()
        .map(|c| Subgroup::generated(group, &c.members))
        .collect();
    Ok(join_closure(group, Subgroup::trivial(group), &closures))
}

fn join_closure(group: &FiniteGroup, bottom: Subgroup, atoms: &[Subgroup]) -> Vec<Subgroup> {
    let mut found: HashSet<Subgroup> = HashSet::from([bottom.clone()]);
    let mut work = vec![bottom];
    while let Some(h) = work.pop() {
        for a in atoms {
            if a.is_subset_of(&h) {
                continue;
            }
            let j = h.join(group, a);
            if found.insert(j.clone()) {
                work.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort();
    out
}

pub fn subgroups_up_to_conjugacy(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    subgroups_up_to_conjugacy_capped(group, Caps::global())
}

/// One subgroup per conjugacy class, each the least conjugate of its class,
/// sorted by size then member list.
///
/// Every subgroup is reached from the trivial one by adjoining one element
/// at a time, and conjugating a chain preserves this, so extending one
/// representative per class by every element is complete.
pub fn subgroups_up_to_conjugacy_capped(
    group: &FiniteGroup,
    caps: &Caps,
) -> Result<Vec<Subgroup>, GroupError> {
    check_cap(group, caps)?;
    let trivial = Subgroup::trivial(group);
    let mut reps: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut visited: HashSet<Vec<usize>> = HashSet::from([trivial.members.clone()]);
    let mut work = vec![trivial];
    while let Some(h) = work.pop() {
        let gens = group.greedy_generators_of(&h);
        for g in group.elements() {
            if h.contains(g) {
                continue;
            }
            let mut k_gens = gens.clone();
            k_gens.push(g);
            let k = Subgroup::generated(group, &k_gens);
            if !visited.insert(k.members.clone()) {
                continue;
            }
            let canon = k.canonical_conjugate(group);
            if reps.insert(canon.clone()) {
                work.push(canon);
            }
        }
    }
    let mut out: Vec<Subgroup> = reps.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every subgroup, sorted by size then member list.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    let reps = subgroups_up_to_conjugacy(group)?;
    let mut all: BTreeSet<Subgroup> = BTreeSet::new();
    for r in reps {
        for x in group.elements() {
            all.insert(r.conjugate_by(group, x));
        }
    }
    Ok(all.into_iter().collect())
}

/// `G/N` with the canonical surjection; cosets are numbered by least element.
pub fn quotient(
    group: &Arc<FiniteGroup>,
    normal: &Subgroup,
) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
    if normal.parent_order() != group.order() {
        return Err(GroupError::InvalidSubgroup("subgroup of a different group".into()));
    }
    if let Some((g, _)) = normal.normality_witness(group) {
        return Err(GroupError::NotNormal(g));
    }
    let cosets = normal.left_cosets(group);
    let mut coset_of = vec![0; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            coset_of[x] = i;
        }
    }
    let m = cosets.len();
    let mut table = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = coset_of[group.mul(cosets[i][0], cosets[j][0])];
        }
    }
    let target = Arc::new(FiniteGroup::from_table_unchecked(m, table));
    let hom = GroupHom::new_unchecked(group.clone(), target.clone(), coset_of);
    Ok((target, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;

    fn s3() -> Arc<FiniteGroup> {
        PermutationGroup::symmetric(3).unwrap().group
    }

    #[test]
    fn class_sizes() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(conjugacy_classes(&c4).len(), 4);
        let sizes: Vec<usize> = conjugacy_classes(&s3()).iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let triv = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(conjugacy_classes(&triv).len(), 1);
    }

    #[test]
    fn normal_subgroup_counts() {
        let s3 = s3();
        let ns = normal_subgroups(&s3).unwrap();
        assert_eq!(ns.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 3, 6]);
        assert_eq!(normal_subgroups(&FiniteGroup::cyclic(4).unwrap()).unwrap().len(), 3);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_product(&c2, &c2).unwrap();
        assert_eq!(normal_subgroups(&v4).unwrap().len(), 5);
    }

    #[test]
    fn subgroup_classes() {
        let s3 = s3();
        let reps = subgroups_up_to_conjugacy(&s3).unwrap();
        assert_eq!(reps.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(subgroups_up_to_conjugacy(&c2).unwrap().len(), 2);
    }

    #[test]
    fn gl32_index_seven_classes() {
        let gl = PermutationGroup::gl32().group;
        let reps = subgroups_up_to_conjugacy(&gl).unwrap();
        assert_eq!(reps.len(), 15);
        assert_eq!(reps.iter().filter(|h| h.index() == 7).count(), 2);
        assert_eq!(all_subgroups(&gl).unwrap().len(), 179);
    }

    #[test]
    fn quotients() {
        let s3 = s3();
        let a3 = normal_subgroups(&s3).unwrap()[1].clone();
        let (c2, hom) = quotient(&s3, &a3).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(hom.kernel(), a3);
        let (same, id) = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(same.order(), 6);
        assert!(id.is_isomorphism());
        let (triv, _) = quotient(&s3, &Subgroup::whole(&s3)).unwrap();
        assert_eq!(triv.order(), 1);
        let c2_sub = subgroups_up_to_conjugacy(&s3).unwrap()[1].clone();
        assert!(matches!(quotient(&s3, &c2_sub), Err(GroupError::NotNormal(_))));
    }

    #[test]
    fn subgroup_validation() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(Subgroup::new(&c4, [0, 2]).is_ok());
        assert!(Subgroup::new(&c4, [0, 1]).is_err());
        assert!(Subgroup::new(&c4, [2]).is_err());
    }

    #[test]
    fn caps_enforced() {
        let caps = Caps { exhaustive_order: 4, ..Caps::default() };
        assert!(matches!(
            normal_subgroups_capped(&s3(), &caps),
            Err(GroupError::CapExceeded { order: 6, cap: 4 })
        ));
    }
}
