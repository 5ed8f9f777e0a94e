//! Literal Tannaka families on tiny groups with explicit unitary models.
//!
//! For a grouplike `σ`, a family `(u_π)_{π ∈ σ}` is a Tannaka family when
//! `u_1 = 1`, `u_τ T = T (u_π ⊗ u_ρ)` for every intertwiner
//! `T: π ⊗ ρ -> τ`, and `u_{π̄} J = J conj(u_π)` for the intertwiner `J`
//! from `conj π` to `π̄`. Candidates are drawn from `∏_{π ∈ σ} π(G)`; the
//! check is that the surviving families are exactly the diagonal images
//! `(π(g))_π`, a group of order `|G / ⋂ ker|`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{tan_functor, DualityError, GrouplikeSubset};
use crate::chartable::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::group::{extend_from_generators, FiniteGroup};

/// Groups that come with hand-written unitary models of every irrep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelGroup {
    /// `C_n`, `1 <= n <= 6`.
    Cyclic(usize),
    /// Dihedral group of order `2n`, `n` in `{3, 4}`.
    Dihedral(usize),
    Quaternion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Mat {
    fn zero(e: u32, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Cyclotomic::zero(e); rows * cols] }
    }

    fn identity(e: u32, n: usize) -> Self {
        let mut m = Mat::zero(e, n, n);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::one(e);
        }
        m
    }

    fn from_ints(e: u32, rows: usize, entries: &[i64]) -> Self {
        let data = entries.iter().map(|&v| Cyclotomic::from_int(e, v)).collect();
        Mat { rows, cols: entries.len() / rows, data }
    }

    fn diag_roots(e: u32, exps: &[i64]) -> Self {
        let n = exps.len();
        let mut m = Mat::zero(e, n, n);
        for (i, &k) in exps.iter().enumerate() {
            m.data[i * n + i] = Cyclotomic::root(e, k);
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    fn mul(&self, other: &Mat) -> Mat {
        let e = self.data[0].order();
        let mut out = Mat::zero(e, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += &(a * other.at(k, j));
                }
            }
        }
        out
    }

    fn kron(&self, other: &Mat) -> Mat {
        let e = self.data[0].order();
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zero(e, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] =
                            self.at(i, j) * other.at(k, l);
                    }
                }
            }
        }
        out
    }

    fn conj(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Cyclotomic::conj).collect() }
    }

    fn add_assign(&mut self, other: &Mat) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    fn trace(&self) -> Cyclotomic {
        let e = self.data[0].order();
        (0..self.rows).fold(Cyclotomic::zero(e), |acc, i| &acc + self.at(i, i))
    }
}

struct Model {
    /// `π(g)` for every element.
    matrices: Vec<Mat>,
}

impl Model {
    fn from_generators(group: &FiniteGroup, gens: &[usize], images: Vec<Mat>) -> Result<Self, DualityError> {
        let e = group.exponent() as u32;
        let d = images[0].rows;
        let matrices = extend_from_generators(group, gens, &images, Mat::identity(e, d), Mat::mul)
            .map_err(|_| DualityError::Internal("matrix model is not a homomorphism".into()))?;
        Ok(Model { matrices })
    }
}

fn build(kind: ModelGroup) -> Result<(Arc<FiniteGroup>, Vec<Model>), DualityError> {
    let bad = |what: &str| DualityError::Internal(format!("no unitary models for {what}"));
    let group = Arc::new(match kind {
        ModelGroup::Cyclic(n) if (1..=6).contains(&n) => FiniteGroup::cyclic(n)?,
        ModelGroup::Dihedral(n) if n == 3 || n == 4 => FiniteGroup::dihedral(n)?,
        ModelGroup::Quaternion => FiniteGroup::dicyclic(2)?,
        other => return Err(bad(&format!("{other:?}"))),
    });
    let e = group.exponent() as u32;
    let ei = e as i64;
    let mut models = Vec::new();
    match kind {
        ModelGroup::Cyclic(n) => {
            let gens = if n == 1 { vec![] } else { vec![1] };
            for j in 0..n as i64 {
                let img = vec![Mat::diag_roots(e, &[j * ei / n as i64])];
                models.push(if n == 1 {
                    Model { matrices: vec![Mat::identity(e, 1)] }
                } else {
                    Model::from_generators(&group, &gens, img)?
                });
            }
        }
        ModelGroup::Dihedral(n) => {
            let gens = [1, n];
            let rot_signs: &[i64] = if n % 2 == 0 { &[1, -1] } else { &[1] };
            for &a in rot_signs {
                for b in [1, -1] {
                    let imgs = vec![Mat::from_ints(e, 1, &[a]), Mat::from_ints(e, 1, &[b])];
                    models.push(Model::from_generators(&group, &gens, imgs)?);
                }
            }
            let z = ei / n as i64;
            for j in 1..((n as i64 + 1) / 2) {
                let imgs = vec![Mat::diag_roots(e, &[j * z, -j * z]), Mat::from_ints(e, 2, &[0, 1, 1, 0])];
                models.push(Model::from_generators(&group, &gens, imgs)?);
            }
        }
        ModelGroup::Quaternion => {
            let gens = [1, 4];
            for a in [1, -1] {
                for b in [1, -1] {
                    let imgs = vec![Mat::from_ints(e, 1, &[a]), Mat::from_ints(e, 1, &[b])];
                    models.push(Model::from_generators(&group, &gens, imgs)?);
                }
            }
            let imgs = vec![Mat::diag_roots(e, &[1, -1]), Mat::from_ints(e, 2, &[0, -1, 1, 0])];
            models.push(Model::from_generators(&group, &gens, imgs)?);
        }
    }
    Ok((group, models))
}

/// Spanning set of `Hom_G(V, W)` by averaging matrix units.
fn intertwiners(group: &FiniteGroup, v: &[Mat], w: &[Mat]) -> Vec<Mat> {
    let e = group.exponent() as u32;
    let (a, b) = (v[0].rows, w[0].rows);
    let mut out = Vec::new();
    for i in 0..b {
        for j in 0..a {
            let mut x = Mat::zero(e, b, a);
            x.data[i * a + j] = Cyclotomic::one(e);
            let mut acc = Mat::zero(e, b, a);
            for g in group.elements() {
                acc.add_assign(&w[g].mul(&x).mul(&v[group.inv(g)]));
            }
            if !acc.is_zero() && !out.contains(&acc) {
                out.push(acc);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannakaReport {
    pub sigma: Vec<usize>,
    /// Families in `∏ π(G)` passing every condition.
    pub families: usize,
    /// Number of distinct diagonal images `(π(g))_π`.
    pub diagonal_images: usize,
    /// Order of the target of `Tan(σ)`.
    pub quotient_order: usize,
    /// Surviving families are exactly the diagonal images.
    pub agrees: bool,
}

/// The model group together with its character table.
pub fn model_table(kind: ModelGroup) -> Result<CharacterTable, DualityError> {
    let (group, _) = build(kind)?;
    Ok(crate::chartable::character_table(&group)?)
}

/// Enumerates Tannaka families for `σ` over the models of `kind`.
///
/// `table` must be the table of the model group, as from [`model_table`].
pub fn tannaka_families(
    kind: ModelGroup,
    table: &CharacterTable,
    sigma: &GrouplikeSubset,
) -> Result<TannakaReport, DualityError> {
    let (group, models) = build(kind)?;
    if **table.group() != *group {
        return Err(DualityError::GroupMismatch);
    }
    let classes = &table.classes().classes;
    let mut model_of = vec![usize::MAX; table.len()];
    for (mi, m) in models.iter().enumerate() {
        let chi: Vec<Cyclotomic> =
            classes.iter().map(|c| m.matrices[c.representative].trace()).collect();
        let row = (0..table.len())
            .find(|&i| table.row(i) == chi.as_slice())
            .ok_or_else(|| DualityError::Internal(format!("model {mi} is not irreducible")))?;
        model_of[row] = mi;
    }
    if model_of.contains(&usize::MAX) {
        return Err(DualityError::Internal("models do not cover the dual".into()));
    }
    let members = sigma.members().to_vec();
    let m = |i: usize| &models[model_of[i]];

    // Candidate values for each member: the distinct matrices in π(G).
    let candidates: Vec<Vec<Mat>> = members
        .iter()
        .map(|&i| m(i).matrices.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let pos = |i: usize| members.binary_search(&i).expect("member");

    // Constraints, each attached to the latest position it mentions.
    struct Tensor {
        a: usize,
        b: usize,
        c: usize,
        maps: Vec<Mat>,
    }
    let mut tensor_at: Vec<Vec<Tensor>> = (0..members.len()).map(|_| Vec::new()).collect();
    let mut conj_at: Vec<Vec<(usize, usize, Vec<Mat>)>> = vec![Vec::new(); members.len()];
    for (pa, &a) in members.iter().enumerate() {
        let conj_model: Vec<Mat> = m(a).matrices.iter().map(Mat::conj).collect();
        let abar = table.conjugate_irrep(a)?;
        let pb = pos(abar);
        let js = intertwiners(&group, &conj_model, &m(abar).matrices);
        conj_at[pa.max(pb)].push((pa, pb, js));
        for (pb, &b) in members.iter().enumerate() {
            let prod: Vec<Mat> = group.elements().map(|g| m(a).matrices[g].kron(&m(b).matrices[g])).collect();
            for &c in table.tensor_decompose(a, b)?.keys() {
                let pc = pos(c);
                let maps = intertwiners(&group, &prod, &m(c).matrices);
                tensor_at[pa.max(pb).max(pc)].push(Tensor { a: pa, b: pb, c: pc, maps });
            }
        }
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(members.len());
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    fn search(
        depth: usize,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
        candidates: &[Vec<Mat>],
        tensor_at: &[Vec<Tensor>],
        conj_at: &[Vec<(usize, usize, Vec<Mat>)>],
    ) {
        if depth == candidates.len() {
            found.insert(chosen.clone());
            return;
        }
        for k in 0..candidates[depth].len() {
            chosen.push(k);
            let u = |p: usize| &candidates[p][chosen[p]];
            let ok = tensor_at[depth].iter().all(|t| {
                let lhs_u = u(t.c);
                let rhs_u = u(t.a).kron(u(t.b));
                t.maps.iter().all(|x| lhs_u.mul(x) == x.mul(&rhs_u))
            }) && conj_at[depth].iter().all(|(pa, pb, js)| {
                js.iter().all(|j| u(*pb).mul(j) == j.mul(&u(*pa).conj()))
            });
            if ok {
                search(depth + 1, chosen, found, candidates, tensor_at, conj_at);
            }
            chosen.pop();
        }
    }
    search(0, &mut chosen, &mut found, &candidates, &tensor_at, &conj_at);

    let diagonal: BTreeSet<Vec<usize>> = group
        .elements()
        .map(|g| {
            members
                .iter()
                .enumerate()
                .map(|(p, &i)| {
                    candidates[p].binary_search(&m(i).matrices[g]).expect("image is a candidate")
                })
                .collect()
        })
        .collect();
    let quotient_order = tan_functor(table, sigma)?.target().order();
    Ok(TannakaReport {
        sigma: members,
        families: found.len(),
        diagonal_images: diagonal.len(),
        quotient_order,
        agrees: found == diagonal && diagonal.len() == quotient_order,
    })
}

/// Runs [`tannaka_families`] on every grouplike subset of every model group.
pub fn micro_validation() -> Result<Vec<(ModelGroup, TannakaReport)>, DualityError> {
    let kinds = (1..=6)
        .map(ModelGroup::Cyclic)
        .chain([ModelGroup::Dihedral(3), ModelGroup::Dihedral(4), ModelGroup::Quaternion]);
    let mut out = Vec::new();
    for kind in kinds {
        let table = model_table(kind)?;
        for sigma in super::enumerate_grouplike(&table) {
            out.push((kind, tannaka_families(kind, &table, &sigma)?));
        }
    }
    Ok(out)
}
