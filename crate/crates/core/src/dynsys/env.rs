use std::collections::HashMap;
use std::sync::Arc;

use super::{is_equivariant_bijection, is_normal, point_spectrum, DynError, PointedSystem, TopSystem};
use crate::chartable::CharacterTable;
use crate::duality::{tan_functor, Compactification, GrouplikeSubset};
use crate::group::{FiniteGroup, GroupHom, Subgroup};

/// The enveloping group of a pointed minimal system.
#[derive(Debug, Clone)]
pub struct Envelope {
    /// `G -> E(K)`, the image of `G` in `Sym(K)`.
    pub compactification: Compactification,
    /// `evaluation[h] = h(base)` for each element `h` of the envelope.
    pub evaluation: Vec<usize>,
    /// The permutation of `K` realizing each envelope element.
    pub permutations: Vec<Vec<usize>>,
}

/// `Env(K, φ, y)`: `G` onto its image in `Sym(K)`, plus `θ ↦ θ(y)`.
pub fn env_functor(p: &PointedSystem) -> Result<Envelope, DynError> {
    let sys = p.system();
    if !sys.is_minimal() {
        return Err(DynError::NotMinimal);
    }
    let group = sys.group();
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut permutations: Vec<Vec<usize>> = Vec::new();
    let mut images = Vec::with_capacity(group.order());
    for t in group.elements() {
        let perm = sys.action(t);
        let i = match index.get(perm) {
            Some(&i) => i,
            None => {
                index.insert(perm, permutations.len());
                permutations.push(perm.to_vec());
                permutations.len() - 1
            }
        };
        images.push(i);
    }
    let n = permutations.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &permutations {
        for b in &permutations {
            let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
            table.push(index[ab.as_slice()]);
        }
    }
    let target = Arc::new(FiniteGroup::from_table_unchecked(n, table));
    let map = GroupHom::new_unchecked(group.clone(), target, images);
    let evaluation = permutations.iter().map(|h| h[p.base()]).collect();
    Ok(Envelope { compactification: Compactification::new(map)?, evaluation, permutations })
}

/// `Rot(H, c)`: `G` acting on `H` by `x ↦ c(t) x`, pointed at the identity.
pub fn rot_functor(c: &Compactification) -> PointedSystem {
    let h = c.target();
    let action = c.base().elements().map(|t| h.row(c.apply(t)).to_vec()).collect();
    PointedSystem::new(TopSystem::new_unchecked(c.base().clone(), action), 0).expect("identity is a point")
}

/// `G` acting on `H/U` by `xU ↦ c(t) x U`.
pub fn quasi_rotation(c: &Compactification, u: &Subgroup) -> Result<TopSystem, DynError> {
    let h = c.target();
    if u.parent_order() != h.order() {
        return Err(DynError::BadAction("subgroup does not belong to the compactification target".into()));
    }
    let onto = TopSystem::coset_action(h.clone(), u);
    let action = c.base().elements().map(|t| onto.action(c.apply(t)).to_vec()).collect();
    Ok(TopSystem::new_unchecked(c.base().clone(), action))
}

/// The orbit map `Rot(Env(p)) -> p`, when it is an equivariant bijection.
pub fn verify_env_rot_roundtrip(p: &PointedSystem) -> Result<Option<Vec<usize>>, DynError> {
    let env = env_functor(p)?;
    let rot = rot_functor(&env.compactification);
    let q = env.evaluation;
    let ok = q[rot.base()] == p.base() && is_equivariant_bijection(rot.system(), p.system(), &q);
    Ok(ok.then_some(q))
}

/// The isomorphism `Env(Rot(c)) -> c` of compactifications.
pub fn verify_rot_env_roundtrip(c: &Compactification) -> Result<Option<GroupHom>, DynError> {
    let env = env_functor(&rot_functor(c))?;
    Ok(env.compactification.isomorphism_to(c))
}

/// `Rot(Tan(σ))` with the base point forgotten, checked to have support `σ`
/// and to be normal.
pub fn realize_spectrum(table: &CharacterTable, sigma: &GrouplikeSubset) -> Result<TopSystem, DynError> {
    let c = tan_functor(table, sigma)?;
    let sys = rot_functor(&c).into_system();
    let spec = point_spectrum(table, &sys)?;
    if spec.support() != sigma.members() {
        return Err(DynError::Internal(format!(
            "realized support {:?} differs from {:?}",
            spec.support(),
            sigma.members()
        )));
    }
    if !is_normal(table, &sys)?.is_normal() {
        return Err(DynError::Internal("realized system is not normal".into()));
    }
    Ok(sys)
}

/// Decides isomorphism of normal systems from their spectra.
///
/// Equal supports give a bijection built through the envelopes: with
/// `Φ: E(a) -> E(b)` the induced compactification isomorphism,
/// `q(θ(0)) = Φ(θ)(0)`. The map is checked before it is returned.
pub fn normal_iso_decision(
    table: &CharacterTable,
    a: &TopSystem,
    b: &TopSystem,
) -> Result<Option<Vec<usize>>, DynError> {
    a.check_same_group(b)?;
    if !is_normal(table, a)?.is_normal() {
        return Err(DynError::NotNormal('a'));
    }
    if !is_normal(table, b)?.is_normal() {
        return Err(DynError::NotNormal('b'));
    }
    if point_spectrum(table, a)?.support() != point_spectrum(table, b)?.support() {
        return Ok(None);
    }
    let ea = env_functor(&PointedSystem::new(a.clone(), 0)?)?;
    let eb = env_functor(&PointedSystem::new(b.clone(), 0)?)?;
    let phi = ea
        .compactification
        .isomorphism_to(&eb.compactification)
        .ok_or_else(|| DynError::Internal("equal spectra but envelope kernels differ".into()))?;
    let mut q = vec![usize::MAX; a.points()];
    for (h, &x) in ea.evaluation.iter().enumerate() {
        q[x] = eb.evaluation[phi.apply(h)];
    }
    if !is_equivariant_bijection(a, b, &q) {
        return Err(DynError::Internal("envelope certificate failed verification".into()));
    }
    Ok(Some(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::duality::enumerate_grouplike;
    use crate::group::{normal_subgroups, PermutationGroup};

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn envelopes() {
        let c3 = c(3);
        let e = env_functor(&PointedSystem::new(TopSystem::regular(c3.clone()), 0).unwrap()).unwrap();
        assert!(e.compactification.map().is_isomorphism());

        let pg = PermutationGroup::symmetric(3).unwrap();
        let nat = TopSystem::new(pg.group.clone(), pg.perms.iter().map(|p| p.images().to_vec()).collect()).unwrap();
        let e = env_functor(&PointedSystem::new(nat, 0).unwrap()).unwrap();
        assert_eq!(e.compactification.target().order(), 6);
        assert!(e.compactification.map().is_isomorphism());

        let c4 = c(4);
        let half = TopSystem::coset_action(c4.clone(), &Subgroup::generated(&c4, &[2]));
        let e = env_functor(&PointedSystem::new(half, 0).unwrap()).unwrap();
        assert_eq!(e.compactification.target().order(), 2);
        assert_eq!(e.compactification.kernel().members(), &[0, 2]);

        let two = TopSystem::trivial(c4, 2).unwrap();
        assert!(matches!(env_functor(&PointedSystem::new(two, 0).unwrap()), Err(DynError::NotMinimal)));
    }

    #[test]
    fn rotations() {
        let pg = PermutationGroup::symmetric(3).unwrap();
        let g = pg.group.clone();
        assert_eq!(rot_functor(&Compactification::trivial(&g)).system().points(), 1);
        let a3 = normal_subgroups(&g).unwrap()[1].clone();
        let sign = Compactification::from_normal(&g, &a3).unwrap();
        let r = rot_functor(&sign);
        assert_eq!(r.system().points(), 2);
        for t in g.elements() {
            let swaps = r.system().apply(t, 0) == 1;
            assert_eq!(swaps, !a3.contains(t));
        }
        let id = Compactification::identity(g.clone());
        let q = quasi_rotation(&id, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q, *rot_functor(&id).system());
        assert_eq!(quasi_rotation(&id, &Subgroup::whole(&g)).unwrap().points(), 1);
    }

    #[test]
    fn quasi_rotation_gl32() {
        let pg = PermutationGroup::gl32();
        let g = pg.group.clone();
        let subs = crate::group::subgroups_up_to_conjugacy(&g).unwrap();
        let u = subs.iter().find(|s| s.index() == 7).unwrap();
        let sys = quasi_rotation(&Compactification::identity(g), u).unwrap();
        assert_eq!(sys.points(), 7);
        assert!(sys.is_minimal());
    }

    #[test]
    fn roundtrips_on_s3() {
        let pg = PermutationGroup::symmetric(3).unwrap();
        let g = pg.group.clone();
        let t = character_table(&g).unwrap();
        for n in normal_subgroups(&g).unwrap() {
            let comp = Compactification::from_normal(&g, &n).unwrap();
            assert!(verify_rot_env_roundtrip(&comp).unwrap().is_some());
            let p = rot_functor(&comp);
            assert!(verify_env_rot_roundtrip(&p).unwrap().is_some());
        }
        let nat = TopSystem::new(g.clone(), pg.perms.iter().map(|p| p.images().to_vec()).collect()).unwrap();
        assert!(verify_env_rot_roundtrip(&PointedSystem::new(nat, 0).unwrap()).unwrap().is_none());
        for s in enumerate_grouplike(&t) {
            let sys = realize_spectrum(&t, &s).unwrap();
            assert_eq!(sys.points() as u64, s.members().iter().map(|&i| t.degree(i).pow(2)).sum::<u64>());
        }
    }

    #[test]
    fn decisions() {
        let c4 = c(4);
        let t = character_table(&c4).unwrap();
        let reg = TopSystem::regular(c4.clone());
        let moved = reg.relabeled(&[3, 1, 0, 2]).unwrap();
        let q = normal_iso_decision(&t, &reg, &moved).unwrap().unwrap();
        assert!(is_equivariant_bijection(&reg, &moved, &q));
        let half = TopSystem::coset_action(c4.clone(), &Subgroup::generated(&c4, &[2]));
        assert_eq!(normal_iso_decision(&t, &reg, &half).unwrap(), None);

        let pg = PermutationGroup::symmetric(3).unwrap();
        let ts = character_table(&pg.group).unwrap();
        let nat = TopSystem::new(pg.group.clone(), pg.perms.iter().map(|p| p.images().to_vec()).collect()).unwrap();
        assert_eq!(normal_iso_decision(&ts, &nat, &nat), Err(DynError::NotNormal('a')));
        let reg = TopSystem::regular(pg.group.clone());
        let full = GrouplikeSubset::new(&ts, [0, 1, 2]).unwrap();
        let model = realize_spectrum(&ts, &full).unwrap();
        assert!(normal_iso_decision(&ts, &reg, &model).unwrap().is_some());
    }
}
