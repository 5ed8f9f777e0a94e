//! Characters of finite abelian groups as homomorphisms into `μ_e`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Compactification, DualityError};
use crate::chartable::{CharacterTable, ClassData, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::group::{extend_from_generators, FiniteGroup, Subgroup};

/// The dual group `G*` of an abelian `G`.
///
/// Character `χ` is stored as exponents: `χ(t) = ζ_e^{values[χ][t]}` with
/// `e` the exponent of `G`. Characters are sorted by exponent vector, so
/// the trivial character is index 0.
#[derive(Debug, Clone)]
pub struct DualGroup {
    base: Arc<FiniteGroup>,
    exponent: u32,
    values: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    group: Arc<FiniteGroup>,
}

/// Enumerates `Hom(G, μ_e)` and its pointwise multiplication table.
pub fn pontryagin_dual(base: &Arc<FiniteGroup>) -> Result<DualGroup, DualityError> {
    if !base.is_abelian() {
        return Err(DualityError::NotAbelian);
    }
    let e = base.exponent() as u32;
    let gens = base.greedy_generators();
    let steps: Vec<u32> = gens.iter().map(|&g| e / base.element_order(g) as u32).collect();
    let orders: Vec<u32> = gens.iter().map(|&g| base.element_order(g) as u32).collect();
    let mut values = Vec::new();
    let mut choice = vec![0u32; gens.len()];
    loop {
        let images: Vec<u32> = choice.iter().zip(&steps).map(|(&c, &s)| c * s).collect();
        if let Ok(v) = extend_from_generators(base, &gens, &images, 0u32, |a, b| (a + b) % e) {
            values.push(v);
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    values.sort();
    values.dedup();
    if values.len() != base.order() {
        return Err(DualityError::Internal(format!(
            "found {} characters for an abelian group of order {}",
            values.len(),
            base.order()
        )));
    }
    let index: HashMap<Vec<u32>, usize> =
        values.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let n = values.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &values {
        for b in &values {
            let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % e).collect();
            table.push(index[&prod]);
        }
    }
    let group = Arc::new(FiniteGroup::from_table_unchecked(n, table));
    Ok(DualGroup { base: base.clone(), exponent: e, values, index, group })
}

impl DualGroup {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    /// `G*` as an abstract group.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `k` with `χ(t) = ζ_e^k`.
    pub fn exponent_at(&self, chi: usize, t: usize) -> u32 {
        self.values[chi][t]
    }

    pub fn value(&self, chi: usize, t: usize) -> Cyclotomic {
        Cyclotomic::root(self.exponent, self.values[chi][t] as i64)
    }

    /// Looks up a character given as a value vector over `μ_m`, `m | e`.
    pub fn find(&self, exps: &[u32], m: u32) -> Option<usize> {
        if !self.exponent.is_multiple_of(m) {
            return None;
        }
        let scale = self.exponent / m;
        let v: Vec<u32> = exps.iter().map(|&k| k * scale % self.exponent).collect();
        self.index.get(&v).copied()
    }

    pub fn class_function(&self, chi: usize) -> ClassFunction {
        let classes = ClassData::new(&self.base);
        let values = classes
            .classes
            .iter()
            .map(|c| self.value(chi, c.representative))
            .collect();
        ClassFunction::new(self.base.clone(), values)
    }

    pub fn kernel(&self, chi: usize) -> Subgroup {
        let members = self.base.elements().filter(|&t| self.values[chi][t] == 0).collect();
        Subgroup::from_sorted_unchecked(self.base.order(), members)
    }
}

/// `DDual(H, c) = {χ ∘ c : χ ∈ H*}` as a subgroup of `G*`.
pub fn ddual(dual: &DualGroup, c: &Compactification) -> Result<Subgroup, DualityError> {
    if **c.base() != **dual.base() {
        return Err(DualityError::GroupMismatch);
    }
    let target = pontryagin_dual(c.target())?;
    let mut members = Vec::with_capacity(target.len());
    for chi in 0..target.len() {
        let pulled: Vec<u32> = dual.base.elements().map(|t| target.exponent_at(chi, c.apply(t))).collect();
        let idx = dual.find(&pulled, target.exponent()).ok_or_else(|| {
            DualityError::Internal(format!("pullback of character {chi} is not a character of G"))
        })?;
        members.push(idx);
    }
    Ok(Subgroup::new(dual.group(), members)?)
}

/// `CDual(σ)`: the evaluation map `t ↦ (χ ↦ χ(t))` onto its image in `σ*`.
pub fn cdual(dual: &DualGroup, sigma: &Subgroup) -> Result<Compactification, DualityError> {
    if sigma.parent_order() != dual.len() {
        return Err(DualityError::GroupMismatch);
    }
    let e = dual.exponent;
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut points: Vec<Vec<u32>> = Vec::new();
    let mut images = Vec::with_capacity(dual.base.order());
    for t in dual.base.elements() {
        let v: Vec<u32> = sigma.members().iter().map(|&chi| dual.values[chi][t]).collect();
        let next = points.len();
        let i = *index.entry(v.clone()).or_insert_with(|| {
            points.push(v);
            next
        });
        images.push(i);
    }
    if points.len() != sigma.order() {
        return Err(DualityError::Internal(format!(
            "evaluation image has order {} but the subgroup has order {}",
            points.len(),
            sigma.order()
        )));
    }
    let n = points.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &points {
        for b in &points {
            let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % e).collect();
            table.push(index[&prod]);
        }
    }
    let target = Arc::new(FiniteGroup::from_table_unchecked(n, table));
    let map = crate::group::GroupHom::new(dual.base.clone(), target, images)?;
    Compactification::new(map)
}

/// For each character of `G*`, the row of `table` with the same values.
pub fn dual_to_irrep(dual: &DualGroup, table: &CharacterTable) -> Result<Vec<usize>, DualityError> {
    if **table.group() != **dual.base() {
        return Err(DualityError::GroupMismatch);
    }
    let e = table.exponent();
    let mut out = Vec::with_capacity(dual.len());
    for chi in 0..dual.len() {
        let f = dual.class_function(chi);
        let values: Vec<Cyclotomic> = f.values().iter().map(|v| v.embed(e)).collect();
        let row = (0..table.len())
            .find(|&i| table.row(i) == values.as_slice())
            .ok_or_else(|| DualityError::Internal(format!("character {chi} missing from table")))?;
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{all_subgroups, group_is_isomorphic};

    fn rows_for_trivial(d: &DualGroup, t: &CharacterTable) -> usize {
        dual_to_irrep(d, t).unwrap()[0]
    }

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn small_duals() {
        let d2 = pontryagin_dual(&cyclic(2)).unwrap();
        assert_eq!(d2.len(), 2);
        let d4 = pontryagin_dual(&cyclic(4)).unwrap();
        assert!(group_is_isomorphic(d4.group(), &cyclic(4)).unwrap().is_some());
        let gen = (0..4).find(|&c| d4.exponent_at(c, 1) == 1).unwrap();
        assert_eq!(d4.group().element_order(gen), 4);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = Arc::new(FiniteGroup::direct_product(&c2, &c2).unwrap());
        let dv = pontryagin_dual(&v4).unwrap();
        assert_eq!(dv.group().exponent(), 2);
        assert!(pontryagin_dual(&Arc::new(FiniteGroup::dihedral(3).unwrap())).is_err());
    }

    #[test]
    fn ddual_of_reduction() {
        let g = cyclic(4);
        let d = pontryagin_dual(&g).unwrap();
        let id = Compactification::identity(g.clone());
        assert_eq!(ddual(&d, &id).unwrap().order(), 4);
        let two = Subgroup::generated(&g, &[2]);
        let red = Compactification::from_normal(&g, &two).unwrap();
        let s = ddual(&d, &red).unwrap();
        assert_eq!(s.order(), 2);
        let chi2 = (0..4).find(|&c| d.exponent_at(c, 1) == 2).unwrap();
        assert_eq!(s.members(), &[0, chi2]);
        assert_eq!(ddual(&d, &Compactification::trivial(&g)).unwrap().order(), 1);
    }

    #[test]
    fn cdual_examples_and_roundtrip() {
        let g = cyclic(4);
        let d = pontryagin_dual(&g).unwrap();
        let triv = Subgroup::trivial(d.group());
        assert_eq!(cdual(&d, &triv).unwrap().target().order(), 1);
        let chi2 = (0..4).find(|&c| d.exponent_at(c, 1) == 2).unwrap();
        let s = Subgroup::generated(d.group(), &[chi2]);
        let c = cdual(&d, &s).unwrap();
        assert_eq!(c.target().order(), 2);
        assert_eq!(c.kernel().members(), &[0, 2]);
        assert!(cdual(&d, &Subgroup::whole(d.group())).unwrap().map().is_isomorphism());
        for s in all_subgroups(d.group()).unwrap() {
            assert_eq!(ddual(&d, &cdual(&d, &s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn dual_matches_character_table() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let g = Arc::new(FiniteGroup::direct_product(&c3, &c4).unwrap());
        let d = pontryagin_dual(&g).unwrap();
        let t = character_table(&g).unwrap();
        let mut rows = dual_to_irrep(&d, &t).unwrap();
        rows.sort();
        assert_eq!(rows, (0..12).collect::<Vec<_>>());
        assert_eq!(rows_for_trivial(&d, &t), 0);
    }
}
