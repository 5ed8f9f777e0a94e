use serde::{Deserialize, Serialize};

use super::{DynError, TopSystem};
use crate::chartable::{inner_product, permutation_character, CharacterTable};
use crate::duality::{check_grouplike, GrouplikeViolation};

/// Multiplicity of every irrep in the Koopman representation on `C(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpectrum {
    multiplicities: Vec<u64>,
    degrees: Vec<u64>,
    table_hash: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub irrep: usize,
    pub multiplicity: u64,
    pub degree: u64,
}

#[derive(Serialize, Deserialize)]
struct SpectrumExport {
    table_hash: String,
    spectrum: Vec<SpectrumEntry>,
}

impl PointSpectrum {
    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.multiplicities[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `σ_p`: irreps with positive multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.multiplicities.len()).filter(|&i| self.multiplicities[i] > 0).collect()
    }

    pub fn entries(&self) -> Vec<SpectrumEntry> {
        self.support()
            .into_iter()
            .map(|i| SpectrumEntry { irrep: i, multiplicity: self.multiplicities[i], degree: self.degrees[i] })
            .collect()
    }

    pub fn table_hash(&self) -> &str {
        &self.table_hash
    }

    /// `Σ mult(i) deg(i)`, the dimension of `C(K)`.
    pub fn dimension(&self) -> u64 {
        self.multiplicities.iter().zip(&self.degrees).map(|(m, d)| m * d).sum()
    }

    pub fn to_json(&self) -> String {
        let export = SpectrumExport { table_hash: self.table_hash.clone(), spectrum: self.entries() };
        serde_json::to_string(&export).expect("serializable")
    }
}

/// `mult(i) = ⟨χ_perm, χ_i⟩`.
pub fn point_spectrum(table: &CharacterTable, sys: &TopSystem) -> Result<PointSpectrum, DynError> {
    let perm = permutation_character(table, sys)?;
    let mut multiplicities = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let m = inner_product(table, &perm, &table.character(i))?;
        if !m.is_integer() || *m.numer() < 0 {
            return Err(DynError::Internal(format!("multiplicity of irrep {i} is {m}")));
        }
        multiplicities.push(*m.numer() as u64);
    }
    let spec = PointSpectrum {
        multiplicities,
        degrees: table.degrees().to_vec(),
        table_hash: table.content_hash().to_string(),
    };
    if spec.dimension() != sys.points() as u64 {
        return Err(DynError::Internal(format!(
            "spectrum dimension {} differs from {} points",
            spec.dimension(),
            sys.points()
        )));
    }
    Ok(spec)
}

/// An irrep whose positive multiplicity differs from its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultViolation {
    pub irrep: usize,
    pub multiplicity: u64,
    pub degree: u64,
}

/// Outcome of the normality test, with every failed clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub minimal: bool,
    pub mult_violations: Vec<MultViolation>,
    pub grouplike_violation: Option<GrouplikeViolation>,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.mult_violations.is_empty() && self.grouplike_violation.is_none()
    }

    /// One line naming the failed clauses, or `"normal"`.
    pub fn diagnosis(&self, names: impl Fn(usize) -> String) -> String {
        if self.is_normal() {
            return "normal".into();
        }
        let mut parts: Vec<String> = self
            .mult_violations
            .iter()
            .map(|v| {
                let rel = if v.multiplicity < v.degree { "<" } else { ">" };
                format!("mult({})={}{}{}", names(v.irrep), v.multiplicity, rel, v.degree)
            })
            .collect();
        if self.grouplike_violation.is_some() {
            parts.push("support not grouplike".into());
        }
        format!("NOT normal ({})", parts.join("; "))
    }
}

/// Support grouplike and every positive multiplicity equal to the degree.
pub fn is_normal(table: &CharacterTable, sys: &TopSystem) -> Result<NormalityReport, DynError> {
    let spec = point_spectrum(table, sys)?;
    let mult_violations = spec
        .support()
        .into_iter()
        .filter(|&i| spec.mult(i) != spec.degrees[i])
        .map(|i| MultViolation { irrep: i, multiplicity: spec.mult(i), degree: spec.degrees[i] })
        .collect();
    Ok(NormalityReport {
        minimal: sys.is_minimal(),
        mult_violations,
        grouplike_violation: check_grouplike(table, &spec.support()).err(),
    })
}

/// Irreps of a minimal system with `mult > deg`; empty when the bound holds.
pub fn mult_bound_check(table: &CharacterTable, sys: &TopSystem) -> Result<Vec<MultViolation>, DynError> {
    if !sys.is_minimal() {
        return Err(DynError::NotMinimal);
    }
    let spec = point_spectrum(table, sys)?;
    Ok((0..table.len())
        .filter(|&i| spec.mult(i) > spec.degrees[i])
        .map(|i| MultViolation { irrep: i, multiplicity: spec.mult(i), degree: spec.degrees[i] })
        .collect())
}

/// For an equivariant surjection `q: a -> b`, checks `mult_b <= mult_a`.
pub fn spectrum_monotonic_under_factor(
    table: &CharacterTable,
    a: &TopSystem,
    b: &TopSystem,
    q: &[usize],
) -> Result<bool, DynError> {
    a.check_same_group(b)?;
    if q.len() != a.points() || q.iter().any(|&y| y >= b.points()) {
        return Err(DynError::BadAction("factor map has the wrong shape".into()));
    }
    for t in a.group().elements() {
        for x in 0..a.points() {
            if q[a.apply(t, x)] != b.apply(t, q[x]) {
                return Err(DynError::NotEquivariant { element: t, point: x });
            }
        }
    }
    let mut hit = vec![false; b.points()];
    for &y in q {
        hit[y] = true;
    }
    if hit.contains(&false) {
        return Err(DynError::NotSurjective);
    }
    let sa = point_spectrum(table, a)?;
    let sb = point_spectrum(table, b)?;
    Ok((0..table.len()).all(|i| sb.mult(i) <= sa.mult(i)))
}
