use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{FiniteGroup, GroupError};
use crate::caps::Caps;

/// A permutation of `[0, degree)` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images).expect("disjoint cycles")
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }
}

/// An abstract group together with a faithful permutation action.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: Arc<FiniteGroup>,
    /// `perms[a]` is the permutation of element `a`.
    pub perms: Vec<Permutation>,
    /// Element indices of the defining generators, in input order.
    pub generators: Vec<usize>,
}

impl PermutationGroup {
    /// Closes `generators` under composition.
    pub fn generate(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::generate_capped(degree, generators, Caps::global())
    }

    pub fn generate_capped(
        degree: usize,
        generators: &[Vec<usize>],
        caps: &Caps,
    ) -> Result<Self, GroupError> {
        let gens: Vec<Permutation> = generators
            .iter()
            .enumerate()
            .map(|(index, g)| {
                if g.len() != degree {
                    return Err(GroupError::NotPermutation { index, degree });
                }
                Permutation::new(g.clone()).ok_or(GroupError::NotPermutation { index, degree })
            })
            .collect::<Result<_, _>>()?;

        let mut perms = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(perms[0].clone(), 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = perms[x].compose(g);
                if !index.contains_key(&y) {
                    if perms.len() == caps.table_order {
                        return Err(GroupError::CapExceeded {
                            order: perms.len() + 1,
                            cap: caps.table_order,
                        });
                    }
                    index.insert(y.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(y);
                }
            }
        }

        let n = perms.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&perms[a].compose(&perms[b])];
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(PermutationGroup {
            group: Arc::new(FiniteGroup::from_table_unchecked(n, table)),
            perms,
            generators,
        })
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Permutation::degree)
    }

    /// Symmetric group on `n` points, generated by `(0 1 ... n-1)` and `(0 1)`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n <= 1 {
            return Self::generate(n.max(1), &[]);
        }
        let cycle = Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]);
        let swap = Permutation::from_cycles(n, &[&[0, 1]]);
        Self::generate(n, &[cycle.into_images(), swap.into_images()])
    }

    /// Alternating group on `n >= 3` points, generated by 3-cycles `(0 1 i)`.
    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        if n < 3 {
            return Self::generate(n.max(1), &[]);
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).into_images())
            .collect();
        Self::generate(n, &gens)
    }

    /// GL(3,2) acting on the seven nonzero vectors of F_2^3.
    ///
    /// Point `v - 1` is the vector with bit pattern `v`. The generators are
    /// the companion matrix of `x^3 + x + 1` (a Singer cycle of order 7) and
    /// the elementary transvection `e1 -> e1 + e2`.
    pub fn gl32() -> Self {
        let apply = |m: [u8; 3], v: u8| -> u8 {
            // columns of m are the images of e1, e2, e3
            (0..3).fold(0u8, |acc, i| if v >> i & 1 == 1 { acc ^ m[i] } else { acc })
        };
        let singer = [0b010, 0b100, 0b011];
        let transvection = [0b011, 0b010, 0b100];
        let as_perm = |m: [u8; 3]| (1..8u8).map(|v| apply(m, v) as usize - 1).collect::<Vec<_>>();
        Self::generate(7, &[as_perm(singer), as_perm(transvection)])
            .expect("GL(3,2) fits the default cap")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_two_generators() {
        let pg = PermutationGroup::generate(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(pg.group.order(), 6);
        assert!(!pg.group.is_abelian());
        assert_eq!(pg.generators.len(), 2);
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let pg = PermutationGroup::generate(2, &[vec![0, 1]]).unwrap();
        assert_eq!(pg.group.order(), 1);
    }

    #[test]
    fn gl32_has_order_168() {
        let pg = PermutationGroup::gl32();
        assert_eq!(pg.group.order(), 168);
        assert_eq!(pg.degree(), 7);
    }

    #[test]
    fn action_is_faithful_homomorphism() {
        let pg = PermutationGroup::symmetric(4).unwrap();
        let g = &pg.group;
        assert_eq!(g.order(), 24);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(pg.perms[g.mul(a, b)], pg.perms[a].compose(&pg.perms[b]));
            }
        }
        let distinct: std::collections::HashSet<_> = pg.perms.iter().collect();
        assert_eq!(distinct.len(), g.order());
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(matches!(
            PermutationGroup::generate(3, &[vec![0, 0, 1]]),
            Err(GroupError::NotPermutation { index: 0, degree: 3 })
        ));
    }

    #[test]
    fn closure_cap() {
        let caps = Caps { table_order: 5, ..Caps::default() };
        assert!(matches!(
            PermutationGroup::generate_capped(3, &[vec![1, 2, 0], vec![1, 0, 2]], &caps),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn alternating_four() {
        assert_eq!(PermutationGroup::alternating(4).unwrap().group.order(), 12);
    }
}
