//! Property checks over the built-in corpus, one function per property.

use std::fmt::Display;
use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::chartable::{character_table, CharacterTable};
use crate::corpus::{abelian_groups, groups, random_relabeling, transitive_actions, NamedGroup};
use crate::duality::{
    cdual, common_kernel, ddual, dual_to_irrep, enumerate_grouplike, irreps_trivial_on, pontryagin_dual,
    rep_functor, tan_functor, tannaka, translation_properties, verify_rep_tan_roundtrip,
    verify_tan_rep_roundtrip, Compactification, GrouplikeSubset,
};
use crate::dynsys::{
    brute_force_iso_capped, gassmann_search, is_equivariant_bijection, is_normal, mult_bound_check,
    normal_iso_decision, point_spectrum, realize_spectrum, verify_env_rot_roundtrip,
    verify_rot_env_roundtrip, PointedSystem, TopSystem,
};
use crate::group::{all_subgroups, normal_subgroups, FiniteGroup, PermutationGroup};
use crate::measure::{meas_functor, measure_iso_capped, verify_equivalence_roundtrips};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report { name: name.into(), ..Report::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, context: &str, e: impl Display) {
        self.checks += 1;
        self.failures.push(format!("{context}: {e}"));
    }

    fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures.into_iter().map(|f| format!("[{}] {f}", other.name)));
    }
}

fn tables(groups: &[NamedGroup], report: &mut Report) -> Vec<(String, CharacterTable)> {
    let mut out = Vec::new();
    for g in groups {
        match character_table(&g.group) {
            Ok(t) => out.push((g.name.clone(), t)),
            Err(e) => report.error(&g.name, e),
        }
    }
    out
}

/// Exact orthogonality and `Σ deg² = |G|`.
pub fn character_tables(groups: &[NamedGroup]) -> Report {
    let mut r = Report::new("character tables");
    for (name, t) in tables(groups, &mut r) {
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        r.check(sum == t.group().order() as u64, || format!("{name}: degree squares sum to {sum}"));
        if let Err(e) = t.check_orthogonality() {
            r.error(&name, e);
        } else {
            r.checks += 1;
        }
    }
    r
}

/// Grouplike subsets against normal subgroups, both roundtrips, the order
/// law and contravariance.
pub fn duality_equivalence(groups: &[NamedGroup]) -> Report {
    let mut r = Report::new("duality equivalence");
    for (name, t) in tables(groups, &mut r) {
        let g = t.group().clone();
        let sigmas = enumerate_grouplike(&t);
        let normals = match normal_subgroups(&g) {
            Ok(n) => n,
            Err(e) => {
                r.error(&name, e);
                continue;
            }
        };
        r.check(sigmas.len() == normals.len(), || {
            format!("{name}: {} grouplike subsets, {} normal subgroups", sigmas.len(), normals.len())
        });
        for s in &sigmas {
            let body = || -> Result<(), String> {
                let n = common_kernel(&t, s.members()).map_err(|e| e.to_string())?;
                let back = irreps_trivial_on(&t, &n).map_err(|e| e.to_string())?;
                if back != s.members() {
                    return Err(format!("N ↦ σ does not invert σ ↦ N at {:?}", s.members()));
                }
                if !verify_rep_tan_roundtrip(&t, s).map_err(|e| e.to_string())? {
                    return Err(format!("Rep(Tan(σ)) ≠ σ at {:?}", s.members()));
                }
                let p = translation_properties(&t, s).map_err(|e| e.to_string())?;
                if !p.consistent() {
                    return Err(format!("order law fails at {:?}", s.members()));
                }
                Ok(())
            };
            let res = body();
            r.check(res.is_ok(), || format!("{name}: {}", res.unwrap_err()));
        }
        for n in &normals {
            let res = (|| -> Result<bool, String> {
                let c = Compactification::from_normal(&g, n).map_err(|e| e.to_string())?;
                let iso = verify_tan_rep_roundtrip(&t, &c).map_err(|e| e.to_string())?;
                let back = tan_functor(&t, &rep_functor(&t, &c).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                Ok(iso.is_some() && back.kernel() == *n)
            })();
            r.check(res == Ok(true), || format!("{name}: Tan(Rep(c)) ≇ c for kernel {:?}: {res:?}", n.members()));
        }
        let comps: Vec<Compactification> = sigmas.iter().filter_map(|s| tan_functor(&t, s).ok()).collect();
        if comps.len() == sigmas.len() {
            for (i, a) in sigmas.iter().enumerate() {
                for (j, b) in sigmas.iter().enumerate() {
                    let morphism = comps[j].morphism_to(&comps[i]).is_some();
                    r.check(a.is_subset_of(b) == morphism, || {
                        format!("{name}: contravariance fails for {:?} and {:?}", a.members(), b.members())
                    });
                    let rep_ok = !morphism || {
                        let (ri, rj) = (rep_functor(&t, &comps[i]), rep_functor(&t, &comps[j]));
                        matches!((ri, rj), (Ok(x), Ok(y)) if x.is_subset_of(&y))
                    };
                    r.check(rep_ok, || format!("{name}: Rep is not monotone on a morphism"));
                }
            }
        }
    }
    r
}

/// `DDual ∘ CDual = id` on subgroups of `G*`, and agreement with Rep/Tan
/// through `G* ↔ Ĝ`.
pub fn abelian_coherence(groups: &[NamedGroup]) -> Report {
    let mut r = Report::new("abelian coherence");
    for g in groups.iter().filter(|g| g.group.is_abelian()) {
        let name = &g.name;
        let res = (|| -> Result<(usize, Vec<String>), String> {
            let t = character_table(&g.group).map_err(|e| e.to_string())?;
            let dual = pontryagin_dual(&g.group).map_err(|e| e.to_string())?;
            let to_irrep = dual_to_irrep(&dual, &t).map_err(|e| e.to_string())?;
            let mut problems = Vec::new();
            let subs = all_subgroups(dual.group()).map_err(|e| e.to_string())?;
            for s in &subs {
                let c = cdual(&dual, s).map_err(|e| e.to_string())?;
                if ddual(&dual, &c).map_err(|e| e.to_string())? != *s {
                    problems.push(format!("DDual(CDual(σ)) ≠ σ for {:?}", s.members()));
                }
                let image: Vec<usize> = s.members().iter().map(|&x| to_irrep[x]).collect();
                let sigma = match GrouplikeSubset::new(&t, image.clone()) {
                    Ok(sigma) => sigma,
                    Err(e) => {
                        problems.push(format!("image {image:?} of a dual subgroup: {e}"));
                        continue;
                    }
                };
                if rep_functor(&t, &c).map_err(|e| e.to_string())? != sigma {
                    problems.push(format!("Rep(CDual(σ)) differs from σ for {:?}", s.members()));
                }
                if tan_functor(&t, &sigma).map_err(|e| e.to_string())?.kernel() != c.kernel() {
                    problems.push(format!("Tan and CDual kernels differ for {:?}", s.members()));
                }
            }
            Ok((subs.len(), problems))
        })();
        match res {
            Ok((count, problems)) => {
                r.checks += count;
                r.failures.extend(problems.into_iter().map(|p| format!("{name}: {p}")));
            }
            Err(e) => r.error(name, e),
        }
    }
    r
}

/// Tannaka families versus `G/⋂ker` on the hand-modelled groups.
pub fn tannaka_families() -> Report {
    let mut r = Report::new("tannaka families");
    match tannaka::micro_validation() {
        Ok(reports) => {
            for (kind, rep) in reports {
                r.check(rep.agrees, || format!("{kind:?} σ={:?}: {rep:?}", rep.sigma));
            }
        }
        Err(e) => r.error("micro-validation", e),
    }
    r
}

fn transitive(g: &NamedGroup, max_points: usize, r: &mut Report) -> Vec<TopSystem> {
    match transitive_actions(&g.group, max_points) {
        Ok(a) => a,
        Err(e) => {
            r.error(&g.name, e);
            Vec::new()
        }
    }
}

/// `Rot(Env(p)) ≅ p` for transitive normal actions at every base point, and
/// `Env(Rot(c)) ≅ c` for every compactification.
pub fn env_rot(groups: &[NamedGroup], max_points: usize) -> Report {
    let mut r = Report::new("env/rot equivalence");
    for (name, t) in tables(groups, &mut r) {
        let g = NamedGroup { name: name.clone(), group: t.group().clone() };
        for sys in transitive(&g, max_points, &mut r) {
            match is_normal(&t, &sys) {
                Ok(rep) if rep.is_normal() => {}
                Ok(_) => continue,
                Err(e) => {
                    r.error(&name, e);
                    continue;
                }
            }
            for base in 0..sys.points() {
                let p = PointedSystem::new(sys.clone(), base).expect("base in range");
                let res = verify_env_rot_roundtrip(&p);
                r.check(matches!(res, Ok(Some(_))), || {
                    format!("{name}: Rot(Env) fails on a {}-point system at base {base}: {res:?}", sys.points())
                });
            }
        }
        match normal_subgroups(t.group()) {
            Ok(normals) => {
                for n in normals {
                    let res = Compactification::from_normal(t.group(), &n)
                        .map_err(|e| e.to_string())
                        .and_then(|c| verify_rot_env_roundtrip(&c).map_err(|e| e.to_string()));
                    r.check(matches!(res, Ok(Some(_))), || format!("{name}: Env(Rot(c)) ≇ c for kernel {:?}", n.members()));
                }
            }
            Err(e) => r.error(&name, e),
        }
    }
    r
}

fn relabeled_copies(systems: &[TopSystem], seed: u64) -> Vec<TopSystem> {
    systems
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.relabeled(&random_relabeling(s.points(), seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
                .expect("permutation")
        })
        .collect()
}

/// Spectral decision against the oracle on pairs of normal transitive
/// systems, including seeded relabeled copies.
pub fn hvn_decision(groups: &[NamedGroup], max_points: usize, seed: u64) -> Report {
    let mut r = Report::new("hvn decision vs oracle");
    let caps = Caps::default();
    for (name, t) in tables(groups, &mut r) {
        let g = NamedGroup { name: name.clone(), group: t.group().clone() };
        let normal: Vec<TopSystem> = transitive(&g, max_points, &mut r)
            .into_iter()
            .filter(|s| is_normal(&t, s).map(|rep| rep.is_normal()).unwrap_or(false))
            .collect();
        let mut all = normal.clone();
        all.extend(relabeled_copies(&normal, seed));
        for a in &all {
            for b in &all {
                let decided = normal_iso_decision(&t, a, b);
                let oracle = brute_force_iso_capped(a, b, &caps);
                match (decided, oracle) {
                    (Ok(d), Ok(o)) => {
                        r.check(d.is_some() == o.is_some(), || {
                            format!("{name}: decision {} but oracle {} ({} vs {} points)", d.is_some(), o.is_some(), a.points(), b.points())
                        });
                        if let Some(q) = d {
                            r.check(is_equivariant_bijection(a, b, &q), || format!("{name}: certificate fails"));
                        }
                    }
                    (d, o) => r.error(&name, format!("decision {d:?}, oracle {o:?}")),
                }
            }
        }
    }
    r
}

/// `realize_spectrum` on every grouplike subset.
pub fn realization(groups: &[NamedGroup]) -> Report {
    let mut r = Report::new("realization");
    for (name, t) in tables(groups, &mut r) {
        for s in enumerate_grouplike(&t) {
            let res = realize_spectrum(&t, &s).map_err(|e| e.to_string()).and_then(|sys| {
                let support = point_spectrum(&t, &sys).map_err(|e| e.to_string())?.support();
                let normal = is_normal(&t, &sys).map_err(|e| e.to_string())?.is_normal();
                Ok(support == s.members() && normal)
            });
            r.check(res == Ok(true), || format!("{name}: realization of {:?}: {res:?}", s.members()));
        }
    }
    r
}

/// Meas/Top roundtrips on minimal systems and agreement of topological and
/// measure isomorphism on pairs with at most `pair_points` points.
pub fn meas_top(groups: &[NamedGroup], max_points: usize, pair_points: usize, seed: u64) -> Report {
    let mut r = Report::new("meas/top equivalence");
    let caps = Caps::default();
    for g in groups {
        let systems = transitive(g, max_points, &mut r);
        let rt = verify_equivalence_roundtrips(&systems, &caps);
        r.checks += rt.checked;
        r.failures.extend(rt.failures.into_iter().map(|f| format!("{}: {f}", g.name)));
        let small: Vec<TopSystem> = systems.into_iter().filter(|s| s.points() <= pair_points).collect();
        let mut all = small.clone();
        all.extend(relabeled_copies(&small, seed));
        for a in &all {
            for b in &all {
                let top = brute_force_iso_capped(a, b, &caps);
                let meas = meas_functor(a)
                    .and_then(|ma| meas_functor(b).map(|mb| (ma, mb)))
                    .and_then(|(ma, mb)| measure_iso_capped(&ma, &mb, &caps));
                match (top, meas) {
                    (Ok(x), Ok(y)) => r.check(x.is_some() == y.is_some(), || {
                        format!("{}: topological {} but measure {}", g.name, x.is_some(), y.is_some())
                    }),
                    (x, y) => r.error(&g.name, format!("{x:?} / {y:?}")),
                }
            }
        }
    }
    r
}

/// `mult ≤ deg` on every minimal system.
pub fn mult_bound(groups: &[NamedGroup], max_points: usize) -> Report {
    let mut r = Report::new("multiplicity bound");
    for (name, t) in tables(groups, &mut r) {
        let g = NamedGroup { name: name.clone(), group: t.group().clone() };
        for sys in transitive(&g, max_points, &mut r) {
            match mult_bound_check(&t, &sys) {
                Ok(v) => r.check(v.is_empty(), || format!("{name}: {v:?} on {} points", sys.points())),
                Err(e) => r.error(&name, e),
            }
        }
    }
    r
}

/// A Gassmann pair in `GL(3,2)` on 7 points, and none in `S3` or `C8`.
pub fn gassmann(include_gl32: bool) -> Report {
    let mut r = Report::new("gassmann witness");
    let caps = Caps::default();
    let s3 = PermutationGroup::symmetric(3).expect("S3").group;
    let c8 = Arc::new(FiniteGroup::cyclic(8).expect("C8"));
    for (name, g) in [("S3", s3), ("C8", c8)] {
        let res = gassmann_search(&g, &caps);
        r.check(matches!(res, Ok(None)), || format!("{name}: unexpected result {res:?}"));
    }
    if include_gl32 {
        let gl = PermutationGroup::gl32().group;
        match gassmann_search(&gl, &caps) {
            Ok(Some(pair)) => {
                let fixed = |s: &TopSystem| -> Vec<usize> { gl.elements().map(|x| s.fixed_points(x)).collect() };
                r.check(pair.a.points() == 7 && pair.b.points() == 7, || format!("GL(3,2): pair has {} and {} points", pair.a.points(), pair.b.points()));
                r.check(pair.a.is_minimal() && pair.b.is_minimal(), || "GL(3,2): pair not transitive".into());
                r.check(fixed(&pair.a) == fixed(&pair.b), || "GL(3,2): permutation characters differ".into());
                let iso = brute_force_iso_capped(&pair.a, &pair.b, &caps);
                r.check(matches!(iso, Ok(None)), || format!("GL(3,2): oracle returned {iso:?}"));
            }
            other => r.error("GL(3,2)", format!("no pair: {other:?}")),
        }
    }
    r
}

pub const SUITES: [&str; 6] = ["chartable", "duality", "envrot", "meastop", "hvn", "all"];

/// Runs a named suite over corpus groups of order at most `max_order`.
pub fn run_suite(suite: &str, max_order: usize, seed: u64) -> Option<Vec<Report>> {
    let gs = groups(max_order);
    let abel = abelian_groups(max_order.min(32));
    let small: Vec<NamedGroup> = gs.iter().filter(|g| g.group.order() <= 24).cloned().collect();
    let reports = match suite {
        "chartable" => vec![character_tables(&gs)],
        "duality" => vec![duality_equivalence(&small), abelian_coherence(&abel), tannaka_families()],
        "envrot" => vec![env_rot(&gs, 24), mult_bound(&gs, 24)],
        "meastop" => vec![meas_top(&gs, 24, 12, seed)],
        "hvn" => vec![hvn_decision(&gs, 16, seed), realization(&gs), gassmann(max_order >= 168)],
        "all" => ["chartable", "duality", "envrot", "meastop", "hvn"]
            .iter()
            .flat_map(|s| run_suite(s, max_order, seed).expect("known suite"))
            .collect(),
        _ => return None,
    };
    Some(reports)
}

/// Combines reports into one.
pub fn summarize(name: &str, reports: Vec<Report>) -> Report {
    let mut total = Report::new(name);
    for rep in reports {
        total.absorb(rep);
    }
    total
}
