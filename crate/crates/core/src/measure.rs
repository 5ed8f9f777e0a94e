//! Finite atomic measure-preserving systems and the Meas/Top functors.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::caps::Caps;
use crate::dynsys::{brute_force_iso_capped, equivariant_search, DynError, TopSystem};

pub type Weight = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasError {
    #[error("system is not minimal")]
    NotMinimal,
    #[error("system is not ergodic")]
    NotErgodic,
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("element {element} does not preserve the weight of atom {atom}")]
    NotPreserved { element: usize, atom: usize },
    #[error(transparent)]
    Dyn(#[from] DynError),
}

/// A `G`-action on `k` atoms with an invariant probability vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSystem {
    system: TopSystem,
    weights: Vec<Weight>,
}

impl MeasureSystem {
    pub fn new(system: TopSystem, weights: Vec<Weight>) -> Result<Self, MeasError> {
        if weights.len() != system.points() {
            return Err(MeasError::BadWeights(format!(
                "{} weights for {} atoms",
                weights.len(),
                system.points()
            )));
        }
        if let Some(x) = weights.iter().position(|w| *w <= Weight::from_integer(0)) {
            return Err(MeasError::BadWeights(format!("weight of atom {x} is not positive")));
        }
        let total: Weight = weights.iter().sum();
        if total != Weight::from_integer(1) {
            return Err(MeasError::BadWeights(format!("weights sum to {total}")));
        }
        for t in system.group().elements() {
            for x in 0..system.points() {
                if weights[system.apply(t, x)] != weights[x] {
                    return Err(MeasError::NotPreserved { element: t, atom: x });
                }
            }
        }
        Ok(MeasureSystem { system, weights })
    }

    pub fn system(&self) -> &TopSystem {
        &self.system
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn atoms(&self) -> usize {
        self.system.points()
    }
}

/// Uniform weights on a minimal system: its unique invariant measure.
pub fn meas_functor(sys: &TopSystem) -> Result<MeasureSystem, MeasError> {
    if !sys.is_minimal() {
        return Err(MeasError::NotMinimal);
    }
    let w = Weight::new(1, sys.points() as i64);
    Ok(MeasureSystem { system: sys.clone(), weights: vec![w; sys.points()] })
}

/// One orbit, so the fixed space is the constants.
pub fn is_ergodic(m: &MeasureSystem) -> bool {
    m.system.is_minimal()
}

/// The atom set with the same action, weights forgotten.
pub fn top_functor(m: &MeasureSystem) -> Result<TopSystem, MeasError> {
    if !is_ergodic(m) {
        return Err(MeasError::NotErgodic);
    }
    Ok(m.system.clone())
}

pub fn measure_iso(a: &MeasureSystem, b: &MeasureSystem) -> Result<Option<Vec<usize>>, MeasError> {
    measure_iso_capped(a, b, Caps::global())
}

/// A weight-preserving equivariant atom bijection.
pub fn measure_iso_capped(
    a: &MeasureSystem,
    b: &MeasureSystem,
    caps: &Caps,
) -> Result<Option<Vec<usize>>, MeasError> {
    let same = |x: usize, y: usize| a.weights[x] == b.weights[y];
    Ok(equivariant_search(&a.system, &b.system, caps, &same)?)
}

/// `π_* μ` for a map `q` from `m`'s atoms onto `points` atoms.
pub fn pushforward(m: &MeasureSystem, q: &[usize], points: usize) -> Vec<Weight> {
    let mut out = vec![Weight::from_integer(0); points];
    for (x, &y) in q.iter().enumerate() {
        out[y] += m.weights[x];
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub checked: usize,
    pub skipped_non_minimal: usize,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each minimal system: `Top(Meas(K)) ≅ K`, `Meas(Top(X)) ≅ X` for
/// `X = Meas(K)`, and the orbit factor from the regular action pushes the
/// uniform measure onto the uniform measure.
pub fn verify_equivalence_roundtrips(corpus: &[TopSystem], caps: &Caps) -> EquivalenceReport {
    let mut report = EquivalenceReport::default();
    for (n, sys) in corpus.iter().enumerate() {
        if !sys.is_minimal() {
            report.skipped_non_minimal += 1;
            continue;
        }
        report.checked += 1;
        let mut fail = |msg: String| report.failures.push(format!("system {n}: {msg}"));
        let result = (|| -> Result<Vec<String>, MeasError> {
            let mut problems = Vec::new();
            let m = meas_functor(sys)?;
            let back = top_functor(&m)?;
            if brute_force_iso_capped(&back, sys, caps)?.is_none() {
                problems.push("Top(Meas(K)) not isomorphic to K".into());
            }
            let again = meas_functor(&top_functor(&m)?)?;
            if measure_iso_capped(&again, &m, caps)?.is_none() {
                problems.push("Meas(Top(X)) not isomorphic to X".into());
            }
            let reg = meas_functor(&TopSystem::regular(sys.group().clone()))?;
            let q: Vec<usize> = sys.group().elements().map(|t| sys.apply(t, 0)).collect();
            if pushforward(&reg, &q, sys.points()) != m.weights {
                problems.push("orbit factor does not push Haar measure to the invariant measure".into());
            }
            Ok(problems)
        })();
        match result {
            Ok(problems) => problems.into_iter().for_each(&mut fail),
            Err(e) => fail(e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, PermutationGroup, Subgroup};
    use std::sync::Arc;

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn uniform_measures() {
        let m = meas_functor(&TopSystem::regular(c(3))).unwrap();
        assert_eq!(m.weights(), &[Weight::new(1, 3); 3]);
        let one = meas_functor(&TopSystem::trivial(c(3), 1).unwrap()).unwrap();
        assert_eq!(one.weights(), &[Weight::from_integer(1)]);
        let nat = TopSystem::from_permutation_group(&PermutationGroup::symmetric(3).unwrap());
        assert!(is_ergodic(&meas_functor(&nat).unwrap()));
        assert_eq!(meas_functor(&TopSystem::trivial(c(2), 2).unwrap()), Err(MeasError::NotMinimal));
    }

    #[test]
    fn validation() {
        let reg = TopSystem::regular(c(2));
        let q = Weight::new(1, 4);
        let two = reg.disjoint_union(&reg).unwrap();
        let m = MeasureSystem::new(two, vec![q; 4]).unwrap();
        assert!(!is_ergodic(&m));
        assert_eq!(top_functor(&m), Err(MeasError::NotErgodic));
        assert!(matches!(
            MeasureSystem::new(reg.clone(), vec![Weight::new(1, 3), Weight::new(2, 3)]),
            Err(MeasError::NotPreserved { .. })
        ));
        assert!(matches!(
            MeasureSystem::new(reg, vec![Weight::new(1, 3), Weight::new(1, 3)]),
            Err(MeasError::BadWeights(_))
        ));
    }

    #[test]
    fn isomorphisms() {
        let g = c(4);
        let reg = TopSystem::regular(g.clone());
        let m = meas_functor(&reg).unwrap();
        assert_eq!(measure_iso(&m, &m).unwrap(), Some(vec![0, 1, 2, 3]));
        let moved = meas_functor(&reg.relabeled(&[1, 2, 3, 0]).unwrap()).unwrap();
        assert!(measure_iso(&m, &moved).unwrap().is_some());
        let half = meas_functor(&TopSystem::coset_action(g.clone(), &Subgroup::generated(&g, &[2]))).unwrap();
        assert_eq!(measure_iso(&m, &half).unwrap(), None);
        assert_eq!(top_functor(&m).unwrap(), reg);
    }

    #[test]
    fn weights_block_isomorphism() {
        let g = c(2);
        let one = TopSystem::trivial(g.clone(), 1).unwrap();
        let two = one.disjoint_union(&one).unwrap();
        let a = MeasureSystem::new(two.clone(), vec![Weight::new(1, 3), Weight::new(2, 3)]).unwrap();
        let b = MeasureSystem::new(two.clone(), vec![Weight::new(2, 3), Weight::new(1, 3)]).unwrap();
        let u = MeasureSystem::new(two, vec![Weight::new(1, 2); 2]).unwrap();
        assert_eq!(measure_iso(&a, &b).unwrap(), Some(vec![1, 0]));
        assert_eq!(measure_iso(&a, &u).unwrap(), None);
    }

    #[test]
    fn roundtrip_report() {
        assert_eq!(verify_equivalence_roundtrips(&[], &Caps::default()), EquivalenceReport::default());
        let s3 = PermutationGroup::symmetric(3).unwrap().group;
        let r = verify_equivalence_roundtrips(&[TopSystem::regular(s3.clone())], &Caps::default());
        assert!(r.passed() && r.checked == 1);
        let r = verify_equivalence_roundtrips(&[TopSystem::trivial(s3, 2).unwrap()], &Caps::default());
        assert_eq!(r.skipped_non_minimal, 1);
    }
}
