//! Exact character tables of finite groups.
//!
//! Irreducible representations are identified with their characters. Row 0
//! is always the trivial character; the remaining rows are sorted by degree
//! and then by value vector.

mod dixon;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::caps::Caps;
use crate::cyclotomic::Cyclotomic;
use crate::dynsys::TopSystem;
use crate::group::{conjugacy_classes, ConjugacyClass, FiniteGroup, Subgroup};

pub use dixon::dixon_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("inner product {0} is not rational")]
    NotRational(String),
    #[error("irrep index {index} out of range ({count} irreps)")]
    BadIndex { index: usize, count: usize },
    #[error("internal character-table failure: {0}")]
    Internal(String),
}

/// Conjugacy classes with the lookups character computations need.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
    /// Class of the inverses of class `j`.
    pub inverse_class: Vec<usize>,
    /// Order of the elements in class `j`.
    pub element_orders: Vec<usize>,
    /// `power_map[j][l]` is the class of `g^l` for the representative `g` of class `j`.
    pub power_map: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn new(group: &FiniteGroup) -> Self {
        let classes = conjugacy_classes(group);
        let mut class_of = vec![0; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = i;
            }
        }
        let inverse_class = classes
            .iter()
            .map(|c| class_of[group.inv(c.representative)])
            .collect();
        let element_orders: Vec<usize> = classes
            .iter()
            .map(|c| group.element_order(c.representative))
            .collect();
        let power_map = classes
            .iter()
            .zip(&element_orders)
            .map(|(c, &m)| {
                let mut x = 0;
                (0..m)
                    .map(|_| {
                        let cls = class_of[x];
                        x = group.mul(x, c.representative);
                        cls
                    })
                    .collect()
            })
            .collect();
        ClassData { classes, class_of, inverse_class, element_orders, power_map }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }
}

/// Multiset of irreducible constituents: irrep index to multiplicity.
pub type Decomposition = BTreeMap<usize, u64>;

#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ClassData,
    exponent: u32,
    rows: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    /// `|C| conj(χ(C))`, the right factor of every inner product.
    weighted_conj: Vec<Vec<Cyclotomic>>,
    tensor: OnceLock<Vec<Vec<Decomposition>>>,
    hash: OnceLock<String>,
}

/// Computes the character table by Burnside–Dixon over `F_p`.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable, CharError> {
    character_table_capped(group, Caps::global())
}

pub fn character_table_capped(group: &Arc<FiniteGroup>, caps: &Caps) -> Result<CharacterTable, CharError> {
    if group.order() > caps.exhaustive_order {
        return Err(CharError::CapExceeded { order: group.order(), cap: caps.exhaustive_order });
    }
    let classes = ClassData::new(group);
    let exponent = group.exponent() as u32;
    let mut rows = dixon::irreducible_characters(group, &classes, exponent)?;
    let is_trivial = |row: &Vec<Cyclotomic>| row.iter().all(|v| v.as_integer() == Some(1));
    rows.sort_by(|a, b| {
        let key = |r: &Vec<Cyclotomic>| (r[0].as_integer().unwrap_or(0), !is_trivial(r));
        key(a).cmp(&key(b)).then_with(|| a.cmp(b))
    });
    let degrees: Vec<u64> = rows
        .iter()
        .map(|r| r[0].as_integer().filter(|&d| d > 0).map(|d| d as u64))
        .collect::<Option<_>>()
        .ok_or_else(|| CharError::Internal("non-integral degree".into()))?;
    if degrees.iter().map(|d| d * d).sum::<u64>() != group.order() as u64 {
        return Err(CharError::Internal("sum of squared degrees differs from |G|".into()));
    }
    Ok(CharacterTable::from_parts(group.clone(), classes, exponent, rows, degrees))
}

impl CharacterTable {
    fn from_parts(
        group: Arc<FiniteGroup>,
        classes: ClassData,
        exponent: u32,
        rows: Vec<Vec<Cyclotomic>>,
        degrees: Vec<u64>,
    ) -> Self {
        let sizes = classes.sizes();
        let weighted_conj = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sizes)
                    .map(|(v, &s)| v.conj().scale(s as i64))
                    .collect()
            })
            .collect();
        CharacterTable {
            group,
            classes,
            exponent,
            rows,
            degrees,
            weighted_conj,
            tensor: OnceLock::new(),
            hash: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    /// Order `e` of the cyclotomic field holding the values.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Number of irreducible characters (= number of classes).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    /// `χ_i(g)` for an element `g`.
    pub fn value(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.rows[i][self.classes.class_of[g]]
    }

    pub fn check_index(&self, index: usize) -> Result<(), CharError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(CharError::BadIndex { index, count: self.len() })
        }
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.rows[i].clone() }
    }

    pub fn regular_character(&self) -> ClassFunction {
        let e = self.exponent;
        let values = (0..self.classes.len())
            .map(|c| Cyclotomic::from_int(e, if c == 0 { self.group.order() as i64 } else { 0 }))
            .collect();
        ClassFunction { group: self.group.clone(), values }
    }

    /// Class function from an integer-valued function on class representatives.
    pub fn integer_class_function(&self, f: impl Fn(usize) -> i64) -> ClassFunction {
        let values = self
            .classes
            .classes
            .iter()
            .map(|c| Cyclotomic::from_int(self.exponent, f(c.representative)))
            .collect();
        ClassFunction { group: self.group.clone(), values }
    }

    /// `|G| ⟨f, χ_i⟩` as an exact cyclotomic, skipping validation.
    fn scaled_inner(&self, values: &[Cyclotomic], i: usize) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.exponent);
        for (v, w) in values.iter().zip(&self.weighted_conj[i]) {
            if !v.is_zero() {
                acc += &(v * w);
            }
        }
        acc
    }

    /// Decomposes a genuine character into irreducibles.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Decomposition, CharError> {
        if !same_group(&f.group, &self.group) {
            return Err(CharError::GroupMismatch);
        }
        self.decompose_values(&f.values)
    }

    fn decompose_values(&self, values: &[Cyclotomic]) -> Result<Decomposition, CharError> {
        let n = self.group.order() as i64;
        let mut out = Decomposition::new();
        for i in 0..self.len() {
            let s = self.scaled_inner(values, i);
            match s.as_integer() {
                Some(v) if v >= 0 && v % n == 0 => {
                    if v > 0 {
                        out.insert(i, (v / n) as u64);
                    }
                }
                _ => {
                    return Err(CharError::NotRational(format!(
                        "multiplicity of irrep {i} is ({s})/{n}, not a nonnegative integer"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Irreducible constituents of `χ_i χ_j`.
    pub fn tensor_decompose(&self, i: usize, j: usize) -> Result<Decomposition, CharError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.tensor_table()[i][j].clone())
    }

    /// Constituents of `χ_i χ_j` for all pairs, computed once.
    pub fn tensor_table(&self) -> &Vec<Vec<Decomposition>> {
        self.tensor.get_or_init(|| {
            let r = self.len();
            let mut table = vec![vec![Decomposition::new(); r]; r];
            for i in 0..r {
                for j in i..r {
                    let prod: Vec<Cyclotomic> =
                        self.rows[i].iter().zip(&self.rows[j]).map(|(a, b)| a * b).collect();
                    let d = self
                        .decompose_values(&prod)
                        .expect("tensor product of characters is a character");
                    table[j][i] = d.clone();
                    table[i][j] = d;
                }
            }
            table
        })
    }

    /// The row whose values are the complex conjugates of row `i`.
    pub fn conjugate_irrep(&self, i: usize) -> Result<usize, CharError> {
        self.check_index(i)?;
        let conj: Vec<Cyclotomic> = self.rows[i].iter().map(Cyclotomic::conj).collect();
        self.rows
            .iter()
            .position(|r| *r == conj)
            .ok_or_else(|| CharError::Internal(format!("conjugate of irrep {i} missing")))
    }

    /// `{g : χ_i(g) = χ_i(1)}`, a normal subgroup.
    pub fn kernel_of_irrep(&self, i: usize) -> Result<Subgroup, CharError> {
        self.check_index(i)?;
        let deg = &self.rows[i][0];
        let members: Vec<usize> = self.group.elements().filter(|&g| self.value(i, g) == deg).collect();
        let sub = Subgroup::from_sorted_unchecked(self.group.order(), members);
        debug_assert!(sub.is_normal_in(&self.group));
        Ok(sub)
    }

    pub fn is_real_row(&self, i: usize) -> bool {
        self.rows[i].iter().all(|v| v.conj() == *v)
    }

    /// Exact row orthogonality, column orthogonality, and the degree
    /// identity. Returns a description of the first failure.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let n = self.group.order() as i64;
        let r = self.len();
        for i in 0..r {
            for j in 0..r {
                let s = self.scaled_inner(&self.rows[j], i);
                let expected = if i == j { n } else { 0 };
                if s.as_integer() != Some(expected) {
                    return Err(format!("<chi{j}, chi{i}> * |G| = {s}, expected {expected}"));
                }
            }
        }
        let sizes = self.classes.sizes();
        for a in 0..r {
            for b in 0..r {
                let mut acc = Cyclotomic::zero(self.exponent);
                for row in &self.rows {
                    acc += &(&row[a] * &row[b].conj());
                }
                let expected = if a == b { n / sizes[a] as i64 } else { 0 };
                if acc.as_integer() != Some(expected) {
                    return Err(format!("column {a} x column {b} = {acc}, expected {expected}"));
                }
            }
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n as u64 {
            return Err("sum of squared degrees differs from |G|".into());
        }
        if !self.rows[0].iter().all(|v| v.as_integer() == Some(1)) {
            return Err("row 0 is not the trivial character".into());
        }
        Ok(())
    }

    pub fn export(&self) -> CharacterTableExport {
        CharacterTableExport {
            body: self.export_body(),
            content_hash: self.content_hash().to_string(),
        }
    }

    fn export_body(&self) -> ExportBody {
        ExportBody {
            group_order: self.group.order(),
            root_order: self.exponent,
            class_sizes: self.classes.sizes(),
            class_representatives: self.classes.classes.iter().map(|c| c.representative).collect(),
            degrees: self.degrees.clone(),
            characters: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| v.coeffs().to_vec()).collect())
                .collect(),
        }
    }

    /// SHA-256 of the canonical export body.
    pub fn content_hash(&self) -> &str {
        self.hash.get_or_init(|| self.export_body().hash())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportBody {
    pub group_order: usize,
    pub root_order: u32,
    pub class_sizes: Vec<usize>,
    pub class_representatives: Vec<usize>,
    pub degrees: Vec<u64>,
    /// One row per irrep; one reduced power-basis coefficient vector per class.
    pub characters: Vec<Vec<Vec<i64>>>,
}

impl ExportBody {
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("export serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// Serialized character table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableExport {
    #[serde(flatten)]
    pub body: ExportBody,
    pub content_hash: String,
}

impl CharacterTableExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export serializes")
    }

    /// Parses an export and checks its embedded hash.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let export: CharacterTableExport = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if export.body.hash() != export.content_hash {
            return Err("content hash does not match table body".into());
        }
        Ok(export)
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A function constant on conjugacy classes, stored per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Self {
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn pointwise_product(&self, other: &ClassFunction) -> Result<ClassFunction, CharError> {
        if !same_group(&self.group, &other.group) {
            return Err(CharError::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }
}

/// `(1/|G|) Σ_C |C| f(C) conj(g(C))`, required to be rational.
pub fn inner_product(
    table: &CharacterTable,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Result<Ratio<i64>, CharError> {
    if !same_group(&f.group, &g.group) || !same_group(&f.group, &table.group) {
        return Err(CharError::GroupMismatch);
    }
    let sizes = table.classes.sizes();
    let mut acc = Cyclotomic::zero(table.exponent);
    for ((a, b), &s) in f.values.iter().zip(&g.values).zip(&sizes) {
        acc += &(a * &b.conj()).scale(s as i64);
    }
    match acc.as_integer() {
        Some(v) => Ok(Ratio::new(v, table.group.order() as i64)),
        None => Err(CharError::NotRational(acc.to_string())),
    }
}

/// Character of the Koopman representation: fixed-point counts per class.
pub fn permutation_character(table: &CharacterTable, sys: &TopSystem) -> Result<ClassFunction, CharError> {
    if !same_group(sys.group(), &table.group) {
        return Err(CharError::GroupMismatch);
    }
    Ok(table.integer_class_function(|g| sys.fixed_points(g) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;

    fn table_of(g: FiniteGroup) -> CharacterTable {
        character_table(&Arc::new(g)).unwrap()
    }

    fn ints(row: &[Cyclotomic]) -> Vec<i64> {
        row.iter().map(|v| v.as_integer().unwrap()).collect()
    }

    #[test]
    fn c2_table() {
        let t = table_of(FiniteGroup::cyclic(2).unwrap());
        assert_eq!(ints(t.row(0)), vec![1, 1]);
        assert_eq!(ints(t.row(1)), vec![1, -1]);
    }

    #[test]
    fn trivial_group_table() {
        let t = table_of(FiniteGroup::cyclic(1).unwrap());
        assert_eq!(t.len(), 1);
        assert_eq!(ints(t.row(0)), vec![1]);
    }

    #[test]
    fn s3_table() {
        let t = character_table(&PermutationGroup::symmetric(3).unwrap().group).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // classes sorted by size: identity, 3-cycles (size 2), transpositions (size 3)
        assert_eq!(t.classes().sizes(), vec![1, 2, 3]);
        assert_eq!(ints(t.row(2)), vec![2, -1, 0]);
        assert_eq!(ints(t.row(1)), vec![1, 1, -1]);
        t.check_orthogonality().unwrap();
    }

    #[test]
    fn c4_conjugates_and_kernels() {
        let t = table_of(FiniteGroup::cyclic(4).unwrap());
        t.check_orthogonality().unwrap();
        let chi = (0..4)
            .find(|&i| *t.value(i, 1) == Cyclotomic::root(4, 1))
            .unwrap();
        let chi3 = (0..4)
            .find(|&i| *t.value(i, 1) == Cyclotomic::root(4, 3))
            .unwrap();
        assert_eq!(t.conjugate_irrep(chi).unwrap(), chi3);
        assert_eq!(t.conjugate_irrep(0).unwrap(), 0);
        assert_eq!(t.kernel_of_irrep(chi).unwrap().members(), &[0]);
        assert_eq!(t.kernel_of_irrep(0).unwrap().order(), 4);
        let chi2 = (0..4)
            .find(|&i| *t.value(i, 1) == Cyclotomic::from_int(4, -1))
            .unwrap();
        assert_eq!(t.tensor_decompose(chi, chi).unwrap(), Decomposition::from([(chi2, 1)]));
    }

    #[test]
    fn s3_tensor_and_inner_products() {
        let s3 = PermutationGroup::symmetric(3).unwrap();
        let t = character_table(&s3.group).unwrap();
        assert_eq!(
            t.tensor_decompose(2, 2).unwrap(),
            Decomposition::from([(0, 1), (1, 1), (2, 1)])
        );
        for i in 0..3 {
            assert_eq!(t.tensor_decompose(0, i).unwrap(), Decomposition::from([(i, 1)]));
            let reg = inner_product(&t, &t.regular_character(), &t.character(i)).unwrap();
            assert_eq!(reg, Ratio::from_integer(t.degree(i) as i64));
        }
        let nat = t.integer_class_function(|g| s3.perms[g].fixed_points() as i64);
        assert_eq!(inner_product(&t, &nat, &t.character(2)).unwrap(), Ratio::from_integer(1));
        assert_eq!(t.kernel_of_irrep(1).unwrap().order(), 3);
        assert!(t.tensor_decompose(0, 3).is_err());
    }

    #[test]
    fn export_is_stable_and_verifiable() {
        let g = PermutationGroup::symmetric(3).unwrap().group;
        let a = character_table(&g).unwrap().export().to_json();
        let b = character_table(&g).unwrap().export().to_json();
        assert_eq!(a, b);
        let parsed = CharacterTableExport::from_json(&a).unwrap();
        assert_eq!(parsed.body.degrees, vec![1, 1, 2]);
        let tampered = a.replacen("\"group_order\": 6", "\"group_order\": 7", 1);
        assert!(CharacterTableExport::from_json(&tampered).is_err());
    }

    #[test]
    fn gl32_table_is_valid() {
        let t = character_table(&PermutationGroup::gl32().group).unwrap();
        assert_eq!(t.degrees(), &[1, 3, 3, 6, 7, 8]);
        t.check_orthogonality().unwrap();
    }
}
