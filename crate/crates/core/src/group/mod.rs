//! Finite groups given by dense multiplication tables.
//!
//! Element `0` is always the identity. Constructors that ingest foreign
//! tables relabel the identity to index `0`.

mod hom;
mod iso;
mod perm;
mod subgroup;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::caps::Caps;

pub use hom::GroupHom;
pub use iso::{group_is_isomorphic, group_is_isomorphic_capped};
pub use perm::{Permutation, PermutationGroup};
pub use subgroup::{
    all_subgroups, conjugacy_classes, normal_subgroups, normal_subgroups_capped, quotient,
    subgroups_up_to_conjugacy, subgroups_up_to_conjugacy_capped, ConjugacyClass, Subgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry [{row}][{col}] = {value} is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("cyclic group of order 0")]
    ZeroOrder,
    #[error("generator {index} is not a permutation of [0, {degree})")]
    NotPermutation { index: usize, degree: usize },
    #[error("subgroup is not normal: {0} conjugates outside")]
    NotNormal(usize),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("group is not abelian: {0}*{1} != {1}*{0}")]
    NotAbelian(usize, usize),
}

/// A finite group stored as its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and relabels its identity to index 0.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_cayley_table_capped(rows, Caps::global())
    }

    pub fn from_cayley_table_capped(rows: &[Vec<usize>], caps: &Caps) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > caps.table_order {
            return Err(GroupError::CapExceeded { order: n, cap: caps.table_order });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: r, len: row.len(), expected: n });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row: r, col: c, value: v, order: n });
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;

        // Move the identity to index 0 by swapping it with element 0.
        let swap = |a: usize| {
            if a == e {
                0
            } else if a == 0 {
                e
            } else {
                a
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(rows[a][b]);
            }
        }

        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0);
            inverses[a] = inv.ok_or(GroupError::NoInverse(swap(a)))?;
        }
        // Latin square check: rows and columns are permutations.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[a * n + b];
                if seen[v] {
                    return Err(GroupError::NoInverse(swap(a)));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[b * n + a];
                if seen[v] {
                    return Err(GroupError::NoInverse(swap(a)));
                }
                seen[v] = true;
            }
        }

        let group = FiniteGroup { order: n, table, inverses, labels: None, generators: OnceLock::new() };
        // Light's associativity test: it suffices to check the middle
        // element over a generating set.
        for g in group.greedy_generators() {
            for x in 0..n {
                let xg = group.mul(x, g);
                for y in 0..n {
                    if group.mul(xg, y) != group.mul(x, group.mul(g, y)) {
                        return Err(GroupError::NotAssociative(swap(x), swap(g), swap(y)));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Builds a group from a table already known to be a group table with
    /// identity at index 0.
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("group table without inverse");
        }
        FiniteGroup { order, table, inverses, labels: None, generators: OnceLock::new() }
    }

    /// The cyclic group Z/n with `table[a][b] = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let caps = Caps::global();
        if n > caps.table_order {
            return Err(GroupError::CapExceeded { order: n, cap: caps.table_order });
        }
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Ok(Self::from_table_unchecked(n, table))
    }

    /// Direct product with `(a, b)` encoded as `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        Self::direct_product_capped(a, b, Caps::global())
    }

    pub fn direct_product_capped(a: &FiniteGroup, b: &FiniteGroup, caps: &Caps) -> Result<Self, GroupError> {
        let (na, nb) = (a.order, b.order);
        let n = na.saturating_mul(nb);
        if n > caps.table_order {
            return Err(GroupError::CapExceeded { order: n, cap: caps.table_order });
        }
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let inverses = (0..n)
            .map(|x| a.inv(x / nb) * nb + b.inv(x % nb))
            .collect();
        let labels = match (&a.labels, &b.labels) {
            (None, None) => None,
            _ => Some(
                (0..n)
                    .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
                    .collect(),
            ),
        };
        Ok(FiniteGroup { order: n, table, inverses, labels, generators: OnceLock::new() })
    }

    /// Dihedral group of order `2n`: element `e*n + k` is `r^k s^e` with
    /// `s r s = r^-1`. Generators are `r = 1` and `s = n`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for x in 0..order {
            let (xe, xk) = (x / n, x % n);
            for y in 0..order {
                let (ye, yk) = (y / n, y % n);
                let k = if xe == 0 { xk + yk } else { xk + n - yk } % n;
                table[x * order + y] = ((xe + ye) % 2) * n + k;
            }
        }
        Ok(Self::from_table_unchecked(order, table))
    }

    /// Dicyclic group of order `4m` (quaternion group `Q8` for `m = 2`):
    /// element `e*2m + k` is `a^k x^e` with `x a x^-1 = a^-1` and `x^2 = a^m`.
    /// Generators are `a = 1` and `x = 2m`.
    pub fn dicyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let h = 2 * m;
        let order = 2 * h;
        let mut table = vec![0; order * order];
        for x in 0..order {
            let (xe, xk) = (x / h, x % h);
            for y in 0..order {
                let (ye, yk) = (y / h, y % h);
                let v = match (xe, ye) {
                    (0, _) => ye * h + (xk + yk) % h,
                    (_, 0) => h + (xk + h - yk) % h,
                    _ => (xk + h - yk + m) % h,
                };
                table[x * order + y] = v;
            }
        }
        Ok(Self::from_table_unchecked(order, table))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    pub(crate) fn abelian_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    /// Elements of the subgroup generated by `gens`, as a membership mask.
    pub fn generate_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set chosen greedily: each step adds the element
    /// that enlarges the generated subgroup most (ties to the smallest index).
    pub fn greedy_generators(&self) -> Vec<usize> {
        self.generators.get_or_init(|| self.compute_generators()).clone()
    }

    fn compute_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.generate_mask(&gens);
        let mut size = 1;
        while size < self.order {
            let mut best = (0, usize::MAX);
            for g in 0..self.order {
                if mask[g] {
                    continue;
                }
                gens.push(g);
                let s = self.generate_mask(&gens).iter().filter(|&&m| m).count();
                gens.pop();
                if s > best.0 {
                    best = (s, g);
                }
            }
            gens.push(best.1);
            mask = self.generate_mask(&gens);
            size = best.0;
        }
        gens
    }

    /// Exhaustive check of the three table invariants.
    pub fn check_invariants(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::NoIdentity);
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::NoInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Returns the same group with elements renamed by `perm`
    /// (`perm[old] = new`); `perm[0]` must be 0.
    pub fn relabeled(&self, perm: &[usize]) -> FiniteGroup {
        assert_eq!(perm[0], 0, "identity must stay at index 0");
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[perm[a]] = perm[self.inv(a)];
        }
        FiniteGroup { order: n, table, inverses, labels: None, generators: OnceLock::new() }
    }
}

pub(crate) fn num_gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn num_lcm(a: usize, b: usize) -> usize {
    a / num_gcd(a, b) * b
}

/// Extends generator images to every element along the right Cayley graph.
///
/// Every edge `x -> x*g` is checked, so a successful result is a
/// homomorphism. On failure returns two generator words that reach the same
/// element with different images.
pub(crate) fn extend_from_generators<T: Clone + PartialEq>(
    group: &FiniteGroup,
    gens: &[usize],
    images: &[T],
    identity: T,
    mul: impl Fn(&T, &T) -> T,
) -> Result<Vec<T>, ExtensionFailure> {
    assert_eq!(gens.len(), images.len());
    let n = group.order();
    let mut value: Vec<Option<T>> = vec![None; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    value[0] = Some(identity);
    let mut queue = VecDeque::from([0]);
    let word = |parent: &[Option<(usize, usize)>], mut x: usize| {
        let mut w = Vec::new();
        while let Some((p, gi)) = parent[x] {
            w.push(gi);
            x = p;
        }
        w.reverse();
        w
    };
    while let Some(x) = queue.pop_front() {
        let vx = value[x].clone().expect("visited");
        for (gi, (&g, img)) in gens.iter().zip(images).enumerate() {
            let y = group.mul(x, g);
            let vy = mul(&vx, img);
            match &value[y] {
                Some(existing) => {
                    if *existing != vy {
                        let mut left = word(&parent, x);
                        left.push(gi);
                        return Err(ExtensionFailure::Relation { left, right: word(&parent, y) });
                    }
                }
                None => {
                    value[y] = Some(vy);
                    parent[y] = Some((x, gi));
                    queue.push_back(y);
                }
            }
        }
    }
    if let Some(missing) = value.iter().position(Option::is_none) {
        return Err(ExtensionFailure::NotGenerating(missing));
    }
    Ok(value.into_iter().map(|v| v.expect("all reached")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ExtensionFailure {
    /// Two words in the generators (as generator positions) name the same
    /// element but receive different images.
    Relation { left: Vec<usize>, right: Vec<usize> },
    NotGenerating(usize),
}
