//! Finite `G`-actions: spectra, normality, Env/Rot and isomorphism.

mod env;
mod iso;
mod spectrum;

use std::sync::Arc;

use thiserror::Error;

use crate::chartable::CharError;
use crate::duality::DualityError;
use crate::group::{
    extend_from_generators, ExtensionFailure, FiniteGroup, GroupError, Permutation, PermutationGroup, Subgroup,
};

pub use env::{
    env_functor, normal_iso_decision, quasi_rotation, realize_spectrum, rot_functor,
    verify_env_rot_roundtrip, verify_rot_env_roundtrip, Envelope,
};
pub(crate) use iso::equivariant_search;
pub use iso::{
    brute_force_iso, brute_force_iso_capped, gassmann_search, is_equivariant_bijection,
    GassmannPair,
};
pub use spectrum::{
    is_normal, mult_bound_check, point_spectrum, spectrum_monotonic_under_factor,
    MultViolation, NormalityReport, PointSpectrum, SpectrumEntry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("phase space must have at least one point")]
    NoPoints,
    #[error("bad action: {0}")]
    BadAction(String),
    #[error("generator images violate a relation: words {left:?} and {right:?} reach the same element")]
    RelationViolation { left: Vec<usize>, right: Vec<usize> },
    #[error("generators do not reach element {0}")]
    NotGenerating(usize),
    #[error("system is not minimal")]
    NotMinimal,
    #[error("system {0} is not normal")]
    NotNormal(char),
    #[error("systems are over different groups")]
    GroupMismatch,
    #[error("base point {base} out of range for {points} points")]
    BaseOutOfRange { base: usize, points: usize },
    #[error("{points} points exceeds brute-force cap {cap} for non-transitive systems")]
    CapExceeded { points: usize, cap: usize },
    #[error("map is not equivariant at element {element}, point {point}")]
    NotEquivariant { element: usize, point: usize },
    #[error("map is not surjective")]
    NotSurjective,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("internal dynamics failure: {0}")]
    Internal(String),
}

/// An action of a finite group on `{0, .., k-1}`, stored for every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSystem {
    group: Arc<FiniteGroup>,
    points: usize,
    action: Vec<Vec<usize>>,
}

impl TopSystem {
    /// Validates a full action table: `action[t]` is `φ_t` as an image list.
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self, DynError> {
        if action.len() != group.order() {
            return Err(DynError::BadAction(format!(
                "{} permutations for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let points = action[0].len();
        if points == 0 {
            return Err(DynError::NoPoints);
        }
        for (t, p) in action.iter().enumerate() {
            if p.len() != points || Permutation::new(p.clone()).is_none() {
                return Err(DynError::BadAction(format!("element {t} does not act bijectively")));
            }
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(DynError::BadAction("identity does not act trivially".into()));
        }
        for s in group.elements() {
            for t in group.elements() {
                let st = &action[group.mul(s, t)];
                if (0..points).any(|x| st[x] != action[s][action[t][x]]) {
                    return Err(DynError::BadAction(format!("action of {s}*{t} is not the composite")));
                }
            }
        }
        Ok(TopSystem { group, points, action })
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Self {
        let points = action[0].len();
        TopSystem { group, points, action }
    }

    /// Expands images of `gens` to the whole group, checking every relation.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        gens: &[usize],
        images: &[Vec<usize>],
    ) -> Result<Self, DynError> {
        if gens.len() != images.len() {
            return Err(DynError::BadAction(format!(
                "{} generators but {} image lists",
                gens.len(),
                images.len()
            )));
        }
        let points = match images.first() {
            Some(p) => p.len(),
            None if group.order() == 1 => 1,
            None => return Err(DynError::NotGenerating(1)),
        };
        if points == 0 {
            return Err(DynError::NoPoints);
        }
        let perms = images
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Permutation::new(p.clone())
                    .filter(|q| q.degree() == points)
                    .ok_or_else(|| DynError::BadAction(format!("image {i} is not a permutation of {points} points")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let full =
            extend_from_generators(&group, gens, &perms, Permutation::identity(points), |a, b| a.compose(b))
                .map_err(|e| match e {
                    ExtensionFailure::Relation { left, right } => DynError::RelationViolation {
                        left: left.iter().map(|&i| gens[i]).collect(),
                        right: right.iter().map(|&i| gens[i]).collect(),
                    },
                    ExtensionFailure::NotGenerating(x) => DynError::NotGenerating(x),
                })?;
        Ok(TopSystem::new_unchecked(group, full.into_iter().map(Permutation::into_images).collect()))
    }

    /// The defining action of a permutation group.
    pub fn from_permutation_group(pg: &PermutationGroup) -> Self {
        let action = pg.perms.iter().map(|p| p.images().to_vec()).collect();
        TopSystem::new_unchecked(pg.group.clone(), action)
    }

    /// Left translation `x ↦ t x` on `G`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let action = group.elements().map(|t| group.row(t).to_vec()).collect();
        TopSystem::new_unchecked(group, action)
    }

    /// Every element fixes every point.
    pub fn trivial(group: Arc<FiniteGroup>, points: usize) -> Result<Self, DynError> {
        if points == 0 {
            return Err(DynError::NoPoints);
        }
        let id: Vec<usize> = (0..points).collect();
        Ok(TopSystem::new_unchecked(group.clone(), vec![id; group.order()]))
    }

    /// Left translation on the cosets `xH`; point 0 is `H`.
    pub fn coset_action(group: Arc<FiniteGroup>, sub: &Subgroup) -> Self {
        let cosets = sub.left_cosets(&group);
        let mut coset_of = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = i;
            }
        }
        let action = group
            .elements()
            .map(|t| cosets.iter().map(|c| coset_of[group.mul(t, c[0])]).collect())
            .collect();
        TopSystem::new_unchecked(group, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn action(&self, t: usize) -> &[usize] {
        &self.action[t]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn apply(&self, t: usize, x: usize) -> usize {
        self.action[t][x]
    }

    pub fn fixed_points(&self, t: usize) -> usize {
        self.action[t].iter().enumerate().filter(|&(x, &y)| x == y).count()
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for x in 0..self.points {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|t| self.apply(t, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Minimal means transitive for a finite discrete space.
    pub fn is_minimal(&self) -> bool {
        self.group.elements().map(|t| self.apply(t, 0)).collect::<std::collections::HashSet<_>>().len()
            == self.points
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members = self.group.elements().filter(|&t| self.apply(t, x) == x).collect();
        Subgroup::from_sorted_unchecked(self.group.order(), members)
    }

    /// Kernel of the action.
    pub fn kernel(&self) -> Subgroup {
        let members = self
            .group
            .elements()
            .filter(|&t| self.action[t].iter().enumerate().all(|(x, &y)| x == y))
            .collect();
        Subgroup::from_sorted_unchecked(self.group.order(), members)
    }

    /// The same system with point `x` renamed `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, DynError> {
        let p = Permutation::new(perm.to_vec())
            .filter(|p| p.degree() == self.points)
            .ok_or_else(|| DynError::BadAction("relabeling is not a permutation of the points".into()))?;
        let inv = p.inverse();
        let action = self
            .action
            .iter()
            .map(|a| (0..self.points).map(|y| p.apply(a[inv.apply(y)])).collect())
            .collect();
        Ok(TopSystem::new_unchecked(self.group.clone(), action))
    }

    /// `self ⊔ other`, with `other`'s points shifted past `self`'s.
    pub fn disjoint_union(&self, other: &TopSystem) -> Result<Self, DynError> {
        if *self.group != *other.group {
            return Err(DynError::GroupMismatch);
        }
        let k = self.points;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + k)).collect())
            .collect();
        Ok(TopSystem::new_unchecked(self.group.clone(), action))
    }

    pub(crate) fn check_same_group(&self, other: &TopSystem) -> Result<(), DynError> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(DynError::GroupMismatch)
        }
    }
}

/// A system with a distinguished base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSystem {
    system: TopSystem,
    base: usize,
}

impl PointedSystem {
    pub fn new(system: TopSystem, base: usize) -> Result<Self, DynError> {
        if base >= system.points() {
            return Err(DynError::BaseOutOfRange { base, points: system.points() });
        }
        Ok(PointedSystem { system, base })
    }

    pub fn system(&self) -> &TopSystem {
        &self.system
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn into_system(self) -> TopSystem {
        self.system
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;

    #[test]
    fn generators_expand() {
        let s3 = PermutationGroup::symmetric(3).unwrap();
        let imgs: Vec<Vec<usize>> =
            s3.generators.iter().map(|&g| s3.perms[g].images().to_vec()).collect();
        let sys = TopSystem::from_generators(s3.group.clone(), &s3.generators, &imgs).unwrap();
        assert_eq!(sys.points(), 3);
        assert!(sys.is_minimal());
        assert!(TopSystem::new(sys.group().clone(), sys.action_table().to_vec()).is_ok());

        let triv = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let t = TopSystem::from_generators(triv, &[], &[]).unwrap();
        assert_eq!(t.points(), 1);
    }

    #[test]
    fn relation_violation() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let err = TopSystem::from_generators(c2, &[1], &[vec![1, 2, 0]]).unwrap_err();
        assert!(matches!(err, DynError::RelationViolation { .. }));
    }

    #[test]
    fn basic_shapes() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let reg = TopSystem::regular(c4.clone());
        assert!(reg.is_minimal());
        assert_eq!(reg.kernel().order(), 1);
        let two = TopSystem::trivial(c4.clone(), 2).unwrap();
        assert!(!two.is_minimal());
        assert_eq!(two.orbits(), vec![vec![0], vec![1]]);
        let half = TopSystem::coset_action(c4.clone(), &Subgroup::generated(&c4, &[2]));
        assert_eq!(half.points(), 2);
        assert_eq!(half.kernel().members(), &[0, 2]);
        let u = reg.disjoint_union(&half).unwrap();
        assert_eq!(u.orbits().len(), 2);
        let r = reg.relabeled(&[2, 0, 3, 1]).unwrap();
        assert!(TopSystem::new(c4, r.action_table().to_vec()).is_ok());
        assert!(PointedSystem::new(reg, 4).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        assert!(TopSystem::new(c2.clone(), vec![vec![0, 1]]).is_err());
        assert!(TopSystem::new(c2.clone(), vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(TopSystem::new(c2, vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
    }
}
