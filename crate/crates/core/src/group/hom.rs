use std::sync::Arc;

use super::{FiniteGroup, GroupError, Subgroup};

/// A homomorphism between finite groups given by its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(GroupError::NotHomomorphism(format!("image {bad} out of range")));
        }
        if images[0] != 0 {
            return Err(GroupError::NotHomomorphism("identity not preserved".into()));
        }
        for s in source.elements() {
            for t in source.elements() {
                if images[source.mul(s, t)] != target.mul(images[s], images[t]) {
                    return Err(GroupError::NotHomomorphism(format!(
                        "f({s}*{t}) != f({s})*f({t})"
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert!(GroupHom::new(source.clone(), target.clone(), images.clone()).is_ok());
        GroupHom { source, target, images }
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = group.elements().collect();
        GroupHom { source: group.clone(), target: group, images }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self
            .source
            .elements()
            .filter(|&s| self.images[s] == 0)
            .collect();
        Subgroup::from_sorted_unchecked(self.source.order(), members)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().skip(1).all(|&i| i != 0)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if **other.source() != *self.target {
            return Err(GroupError::NotHomomorphism("composition of mismatched maps".into()));
        }
        let images = self.images.iter().map(|&i| other.apply(i)).collect();
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut images = vec![0; self.target.order()];
        for (s, &t) in self.images.iter().enumerate() {
            images[t] = s;
        }
        Some(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}
