//! Grouplike subsets of the dual and their correspondence with
//! compactifications, plus the abelian duality functors.

mod compactification;
pub mod pontryagin;
pub mod tannaka;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::Caps;
use crate::chartable::{CharError, CharacterTable};
use crate::group::{GroupError, GroupHom, Subgroup};

pub use compactification::Compactification;
pub use pontryagin::{cdual, ddual, dual_to_irrep, pontryagin_dual, DualGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("map is not surjective")]
    NotSurjective,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subset is not grouplike: {0}")]
    NotGrouplike(GrouplikeViolation),
    #[error("character table belongs to a different group")]
    GroupMismatch,
    #[error("dual of order {count} exceeds grouplike enumeration cap {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("subset was built against table {found}, not {expected}")]
    TableMismatch { expected: String, found: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("internal duality failure: {0}")]
    Internal(String),
}

/// The first closure condition a subset fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrouplikeViolation {
    MissingTrivial,
    NotConjugateClosed { member: usize, conjugate: usize },
    NotTensorClosed { left: usize, right: usize, component: usize },
}

impl std::fmt::Display for GrouplikeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrouplikeViolation::MissingTrivial => write!(f, "trivial irrep missing"),
            GrouplikeViolation::NotConjugateClosed { member, conjugate } => {
                write!(f, "conjugate chi{conjugate} of chi{member} missing")
            }
            GrouplikeViolation::NotTensorClosed { left, right, component } => {
                write!(f, "chi{component} occurs in chi{left} x chi{right} but is missing")
            }
        }
    }
}

/// A grouplike set of irrep indices, tied to the table it indexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrouplikeSubset {
    members: Vec<usize>,
    table_hash: String,
}

impl GrouplikeSubset {
    /// Validates `members` against `table`.
    pub fn new(table: &CharacterTable, members: impl IntoIterator<Item = usize>) -> Result<Self, DualityError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            table.check_index(m)?;
        }
        check_grouplike(table, &members).map_err(DualityError::NotGrouplike)?;
        Ok(GrouplikeSubset { members, table_hash: table.content_hash().to_string() })
    }

    fn from_mask(table: &CharacterTable, mask: &[bool]) -> Self {
        let members = mask.iter().enumerate().filter_map(|(i, &m)| m.then_some(i)).collect();
        GrouplikeSubset { members, table_hash: table.content_hash().to_string() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &GrouplikeSubset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn table_hash(&self) -> &str {
        &self.table_hash
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Parses a serialized subset and checks it against `table`.
    pub fn from_json(table: &CharacterTable, text: &str) -> Result<Self, DualityError> {
        let raw: GrouplikeSubset = serde_json::from_str(text)
            .map_err(|e| DualityError::Internal(format!("bad grouplike JSON: {e}")))?;
        if raw.table_hash != table.content_hash() {
            return Err(DualityError::TableMismatch {
                expected: table.content_hash().to_string(),
                found: raw.table_hash,
            });
        }
        GrouplikeSubset::new(table, raw.members)
    }

    fn check_table(&self, table: &CharacterTable) -> Result<(), DualityError> {
        if self.table_hash != table.content_hash() {
            return Err(DualityError::TableMismatch {
                expected: table.content_hash().to_string(),
                found: self.table_hash.clone(),
            });
        }
        Ok(())
    }
}

/// Checks the three grouplike conditions in order: trivial member,
/// conjugation, tensor components.
pub fn check_grouplike(table: &CharacterTable, members: &[usize]) -> Result<(), GrouplikeViolation> {
    let mut mask = vec![false; table.len()];
    for &m in members {
        mask[m] = true;
    }
    if !mask[0] {
        return Err(GrouplikeViolation::MissingTrivial);
    }
    for &m in members {
        let c = table.conjugate_irrep(m).expect("valid index");
        if !mask[c] {
            return Err(GrouplikeViolation::NotConjugateClosed { member: m, conjugate: c });
        }
    }
    let tensor = table.tensor_table();
    for &a in members {
        for &b in members {
            if let Some(&c) = tensor[a][b].keys().find(|&&c| !mask[c]) {
                return Err(GrouplikeViolation::NotTensorClosed { left: a, right: b, component: c });
            }
        }
    }
    Ok(())
}

pub fn is_grouplike(table: &CharacterTable, members: &[usize]) -> bool {
    check_grouplike(table, members).is_ok()
}

/// Smallest grouplike subset containing `seed`.
pub fn grouplike_closure(table: &CharacterTable, seed: &[usize]) -> Result<GrouplikeSubset, DualityError> {
    for &s in seed {
        table.check_index(s)?;
    }
    let mut mask = vec![false; table.len()];
    mask[0] = true;
    for &s in seed {
        mask[s] = true;
    }
    close_mask(table, &mut mask);
    Ok(GrouplikeSubset::from_mask(table, &mask))
}

fn close_mask(table: &CharacterTable, mask: &mut [bool]) {
    let tensor = table.tensor_table();
    loop {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let mut changed = false;
        for &m in &members {
            let c = table.conjugate_irrep(m).expect("valid index");
            if !mask[c] {
                mask[c] = true;
                changed = true;
            }
            for &n in &members {
                for &k in tensor[m][n].keys() {
                    if !mask[k] {
                        mask[k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// All grouplike subsets, sorted by size and then member list.
///
/// Grouplike subsets are closed under intersection, so each one is the
/// closure of its members; the search joins singleton closures until no
/// new subset appears.
pub fn enumerate_grouplike(table: &CharacterTable) -> Vec<GrouplikeSubset> {
    let r = table.len();
    let atoms: Vec<Vec<bool>> = (0..r)
        .map(|i| {
            let mut m = vec![false; r];
            m[0] = true;
            m[i] = true;
            close_mask(table, &mut m);
            m
        })
        .collect();
    let bottom = atoms[0].clone();
    let mut found: HashSet<Vec<bool>> = HashSet::from([bottom.clone()]);
    let mut work = vec![bottom];
    while let Some(s) = work.pop() {
        for a in &atoms {
            if a.iter().zip(&s).all(|(&x, &y)| !x || y) {
                continue;
            }
            let mut j: Vec<bool> = s.iter().zip(a).map(|(&x, &y)| x || y).collect();
            close_mask(table, &mut j);
            if found.insert(j.clone()) {
                work.push(j);
            }
        }
    }
    let mut out: Vec<GrouplikeSubset> =
        found.iter().map(|m| GrouplikeSubset::from_mask(table, m)).collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    out
}

/// Subset-by-subset enumeration, limited to small duals.
pub fn enumerate_grouplike_by_subsets(
    table: &CharacterTable,
    caps: &Caps,
) -> Result<Vec<GrouplikeSubset>, DualityError> {
    let r = table.len();
    if r > caps.grouplike_irreps {
        return Err(DualityError::CapExceeded { count: r, cap: caps.grouplike_irreps });
    }
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << (r - 1)) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..r).filter(|i| bits >> (i - 1) & 1 == 1))
            .collect();
        if is_grouplike(table, &members) {
            out.push(GrouplikeSubset {
                members,
                table_hash: table.content_hash().to_string(),
            });
        }
    }
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    Ok(out)
}

fn check_base(table: &CharacterTable, c: &Compactification) -> Result<(), DualityError> {
    if **c.base() != **table.group() {
        return Err(DualityError::GroupMismatch);
    }
    Ok(())
}

/// Irreps whose kernel contains `normal`.
pub fn irreps_trivial_on(table: &CharacterTable, normal: &Subgroup) -> Result<Vec<usize>, DualityError> {
    let mut out = Vec::new();
    for i in 0..table.len() {
        if normal.is_subset_of(&table.kernel_of_irrep(i)?) {
            out.push(i);
        }
    }
    Ok(out)
}

/// `⋂_{i ∈ σ} ker χ_i`.
pub fn common_kernel(table: &CharacterTable, members: &[usize]) -> Result<Subgroup, DualityError> {
    let mut n = Subgroup::whole(table.group());
    for &i in members {
        n = n.intersection(&table.kernel_of_irrep(i)?);
    }
    Ok(n)
}

/// The irreps of `G` that factor through `c`.
pub fn rep_functor(table: &CharacterTable, c: &Compactification) -> Result<GrouplikeSubset, DualityError> {
    check_base(table, c)?;
    let members = irreps_trivial_on(table, &c.kernel())?;
    check_grouplike(table, &members).map_err(|v| {
        DualityError::Internal(format!("representations of a compactification not grouplike: {v}"))
    })?;
    Ok(GrouplikeSubset { members, table_hash: table.content_hash().to_string() })
}

/// `G -> G / ⋂_{i ∈ σ} ker χ_i`.
pub fn tan_functor(table: &CharacterTable, sigma: &GrouplikeSubset) -> Result<Compactification, DualityError> {
    sigma.check_table(table)?;
    let n = common_kernel(table, &sigma.members)?;
    Compactification::from_normal(table.group(), &n)
}

/// `Rep(Tan(σ)) = σ`.
pub fn verify_rep_tan_roundtrip(table: &CharacterTable, sigma: &GrouplikeSubset) -> Result<bool, DualityError> {
    let c = tan_functor(table, sigma)?;
    Ok(rep_functor(table, &c)? == *sigma)
}

/// The isomorphism `Tan(Rep(c)) -> c` of compactifications.
pub fn verify_tan_rep_roundtrip(
    table: &CharacterTable,
    c: &Compactification,
) -> Result<Option<GroupHom>, DualityError> {
    let back = tan_functor(table, &rep_functor(table, c)?)?;
    Ok(back.isomorphism_to(c))
}

/// Structural facts about the compactification a grouplike subset names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationProperties {
    /// Every member is linear, so the target is abelian.
    pub abelian: bool,
    /// `σ = {trivial}`.
    pub trivial: bool,
    /// `Σ_{i ∈ σ} χ_i(1)^2`.
    pub predicted_order: u64,
    /// Order of the target of `Tan(σ)`.
    pub target_order: u64,
}

impl TranslationProperties {
    pub fn consistent(&self) -> bool {
        self.predicted_order == self.target_order
    }
}

pub fn translation_properties(
    table: &CharacterTable,
    sigma: &GrouplikeSubset,
) -> Result<TranslationProperties, DualityError> {
    let c = tan_functor(table, sigma)?;
    Ok(TranslationProperties {
        abelian: sigma.members.iter().all(|&i| table.degree(i) == 1),
        trivial: sigma.members == [0],
        predicted_order: sigma.members.iter().map(|&i| table.degree(i).pow(2)).sum(),
        target_order: c.target().order() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{normal_subgroups, FiniteGroup, PermutationGroup};
    use std::sync::Arc;

    fn s3_table() -> CharacterTable {
        character_table(&PermutationGroup::symmetric(3).unwrap().group).unwrap()
    }

    #[test]
    fn grouplike_checks_in_s3() {
        let t = s3_table();
        assert!(is_grouplike(&t, &[0]));
        assert!(is_grouplike(&t, &[0, 1, 2]));
        assert_eq!(
            check_grouplike(&t, &[0, 2]),
            Err(GrouplikeViolation::NotTensorClosed { left: 2, right: 2, component: 1 })
        );
        assert_eq!(check_grouplike(&t, &[1]), Err(GrouplikeViolation::MissingTrivial));
    }

    #[test]
    fn closures() {
        let t = s3_table();
        assert_eq!(grouplike_closure(&t, &[]).unwrap().members(), &[0]);
        assert_eq!(grouplike_closure(&t, &[2]).unwrap().members(), &[0, 1, 2]);
        let c4 = character_table(&Arc::new(FiniteGroup::cyclic(4).unwrap())).unwrap();
        let chi2 = (0..4).find(|&i| c4.value(i, 1).as_integer() == Some(-1)).unwrap();
        let mut expected = vec![0, chi2];
        expected.sort();
        assert_eq!(grouplike_closure(&c4, &[chi2]).unwrap().members(), expected.as_slice());
    }

    #[test]
    fn enumeration_matches_normal_subgroups() {
        let t = s3_table();
        let all = enumerate_grouplike(&t);
        let members: Vec<&[usize]> = all.iter().map(|s| s.members()).collect();
        assert_eq!(members, vec![&[0][..], &[0, 1], &[0, 1, 2]]);
        assert_eq!(enumerate_grouplike_by_subsets(&t, &Caps::default()).unwrap(), all);

        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = Arc::new(FiniteGroup::direct_product(&c2, &c2).unwrap());
        let tv = character_table(&v4).unwrap();
        assert_eq!(enumerate_grouplike(&tv).len(), 5);
        assert_eq!(normal_subgroups(&v4).unwrap().len(), 5);
        let c2t = character_table(&Arc::new(c2)).unwrap();
        assert_eq!(enumerate_grouplike(&c2t).len(), 2);
    }

    #[test]
    fn subset_enumeration_cap() {
        let t = s3_table();
        let caps = Caps { grouplike_irreps: 2, ..Caps::default() };
        assert!(matches!(
            enumerate_grouplike_by_subsets(&t, &caps),
            Err(DualityError::CapExceeded { count: 3, cap: 2 })
        ));
    }

    #[test]
    fn rep_and_tan_on_s3() {
        let t = s3_table();
        let g = t.group().clone();
        assert_eq!(rep_functor(&t, &Compactification::identity(g.clone())).unwrap().members(), &[0, 1, 2]);
        assert_eq!(rep_functor(&t, &Compactification::trivial(&g)).unwrap().members(), &[0]);
        let a3 = normal_subgroups(&g).unwrap()[1].clone();
        let sign = Compactification::from_normal(&g, &a3).unwrap();
        assert_eq!(rep_functor(&t, &sign).unwrap().members(), &[0, 1]);

        let sgn = GrouplikeSubset::new(&t, [0, 1]).unwrap();
        let c = tan_functor(&t, &sgn).unwrap();
        assert_eq!(c.target().order(), 2);
        assert_eq!(c.kernel(), a3);
        let full = GrouplikeSubset::new(&t, [0, 1, 2]).unwrap();
        assert!(tan_functor(&t, &full).unwrap().map().is_isomorphism());
        let triv = GrouplikeSubset::new(&t, [0]).unwrap();
        assert_eq!(tan_functor(&t, &triv).unwrap().target().order(), 1);

        for s in enumerate_grouplike(&t) {
            assert!(verify_rep_tan_roundtrip(&t, &s).unwrap());
        }
        let iso = verify_tan_rep_roundtrip(&t, &sign).unwrap().unwrap();
        assert_eq!(iso.source().order(), 2);
    }

    #[test]
    fn translation_flags() {
        let t = s3_table();
        let sgn = GrouplikeSubset::new(&t, [0, 1]).unwrap();
        let p = translation_properties(&t, &sgn).unwrap();
        assert!(p.abelian && !p.trivial && p.predicted_order == 2 && p.consistent());
        let full = GrouplikeSubset::new(&t, [0, 1, 2]).unwrap();
        let p = translation_properties(&t, &full).unwrap();
        assert!(!p.abelian && p.target_order == 6 && p.consistent());
        let p = translation_properties(&t, &GrouplikeSubset::new(&t, [0]).unwrap()).unwrap();
        assert!(p.trivial && p.target_order == 1);
    }

    #[test]
    fn serialization_checks_table() {
        let t = s3_table();
        let s = GrouplikeSubset::new(&t, [0, 1]).unwrap();
        let back = GrouplikeSubset::from_json(&t, &s.to_json()).unwrap();
        assert_eq!(back, s);
        let c2t = character_table(&Arc::new(FiniteGroup::cyclic(2).unwrap())).unwrap();
        assert!(matches!(
            GrouplikeSubset::from_json(&c2t, &s.to_json()),
            Err(DualityError::TableMismatch { .. })
        ));
    }
}
