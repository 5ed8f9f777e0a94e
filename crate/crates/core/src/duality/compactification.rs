use std::sync::Arc;

use super::DualityError;
use crate::group::{quotient, FiniteGroup, GroupHom, Subgroup};

/// A surjection `c: G -> H` onto a finite group.
///
/// For a finite discrete group, dense range is surjectivity, so these are
/// exactly the group compactifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compactification {
    map: GroupHom,
}

impl Compactification {
    pub fn new(map: GroupHom) -> Result<Self, DualityError> {
        if !map.is_surjective() {
            return Err(DualityError::NotSurjective);
        }
        Ok(Compactification { map })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        Compactification { map: GroupHom::identity(group) }
    }

    /// The canonical surjection `G -> G/N`.
    pub fn from_normal(group: &Arc<FiniteGroup>, normal: &Subgroup) -> Result<Self, DualityError> {
        let (_, map) = quotient(group, normal)?;
        Ok(Compactification { map })
    }

    /// `G -> 1`.
    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_normal(group, &Subgroup::whole(group)).expect("G is normal in G")
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        self.map.source()
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        self.map.target()
    }

    pub fn map(&self) -> &GroupHom {
        &self.map
    }

    #[inline]
    pub fn apply(&self, t: usize) -> usize {
        self.map.apply(t)
    }

    pub fn kernel(&self) -> Subgroup {
        self.map.kernel()
    }

    /// The unique morphism `Φ: self.target -> other.target` with
    /// `Φ ∘ self = other`, which exists iff `ker self ⊆ ker other`.
    pub fn morphism_to(&self, other: &Compactification) -> Option<GroupHom> {
        if **self.base() != **other.base() {
            return None;
        }
        let mut images = vec![usize::MAX; self.target().order()];
        for t in self.base().elements() {
            let slot = &mut images[self.apply(t)];
            if *slot == usize::MAX {
                *slot = other.apply(t);
            } else if *slot != other.apply(t) {
                return None;
            }
        }
        Some(GroupHom::new_unchecked(self.target().clone(), other.target().clone(), images))
    }

    /// An isomorphism of compactifications, if one exists.
    pub fn isomorphism_to(&self, other: &Compactification) -> Option<GroupHom> {
        self.morphism_to(other).filter(GroupHom::is_isomorphism)
    }
}
