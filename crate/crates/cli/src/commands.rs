use std::fmt::Write as _;

use serde_json::json;

use hvn_core::caps::Caps;
use hvn_core::corpus::identify;
use hvn_core::duality::{common_kernel, GrouplikeSubset};
use hvn_core::dynsys::{
    brute_force_iso, gassmann_search, is_normal, normal_iso_decision, point_spectrum,
};
use hvn_core::group::quotient;
use hvn_core::verify::{run_suite, SUITES};

use crate::workspace::Workspace;
use crate::{Cli, CliError, Command};

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let mut ws = Workspace::default();
    let mut out = String::new();
    let code = match &cli.command {
        Command::Chartable { group, out: path } => chartable(&mut ws, cli, &group.reference(), path.as_deref(), &mut out)?,
        Command::Classify { system } => classify(&mut ws, cli, system, &mut out)?,
        Command::Iso { system, oracle, certificate } => {
            if system.len() != 2 {
                return Err(CliError::usage("iso needs exactly two --system arguments"));
            }
            iso(&mut ws, cli, &system[0], &system[1], *oracle, certificate.as_deref(), &mut out)?
        }
        Command::Verify { suite, max_order } => verify(cli, suite, *max_order, &mut out)?,
        Command::Gassmann { group } => gassmann(&mut ws, cli, &group.reference(), &mut out)?,
    };
    print!("{out}");
    Ok(code)
}

fn irrep_name(i: usize) -> String {
    format!("chi{i}")
}

fn chartable(ws: &mut Workspace, cli: &Cli, reference: &str, path: Option<&str>, out: &mut String) -> Result<u8, CliError> {
    let g = ws.load_group(reference)?;
    let t = ws.table(&g)?;
    let export = t.export();
    if let Some(path) = path {
        std::fs::write(path, export.to_json()).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    }
    if cli.json {
        writeln!(out, "{}", export.to_json()).unwrap();
        return Ok(0);
    }
    let join = |v: &[String]| v.join(" ");
    let body = &export.body;
    writeln!(out, "group order {}, root order {} (z = exp(2 pi i/{}))", body.group_order, body.root_order, body.root_order).unwrap();
    writeln!(out, "class sizes: {}", join(&body.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>())).unwrap();
    writeln!(out, "class representatives: {}", join(&body.class_representatives.iter().map(|s| s.to_string()).collect::<Vec<_>>())).unwrap();
    writeln!(out, "degrees: {}", join(&t.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>())).unwrap();
    for i in 0..t.len() {
        let vals: Vec<String> = t.row(i).iter().map(|v| format!("[{v}]")).collect();
        writeln!(out, "{}: {}", irrep_name(i), vals.join(" ")).unwrap();
    }
    writeln!(out, "content hash: {}", t.content_hash()).unwrap();
    Ok(0)
}

fn classify(ws: &mut Workspace, cli: &Cli, path: &str, out: &mut String) -> Result<u8, CliError> {
    let s = ws.load_system(path)?;
    let g = ws.system_group(&s).to_string();
    let t = ws.table(&g)?;
    let sys = ws.system(&s).clone();
    let spec = point_spectrum(&t, &sys)?;
    let report = is_normal(&t, &sys)?;
    let model = if report.is_normal() {
        let sigma = GrouplikeSubset::new(&t, spec.support())?;
        let n = common_kernel(&t, sigma.members())?;
        let (h, _) = quotient(t.group(), &n)?;
        let hname = identify(&h).unwrap_or_else(|| format!("group of order {}", h.order()));
        Some(if n.order() == 1 {
            format!("regular {hname}")
        } else {
            format!("rotation on {hname} = G/N, |N| = {}", n.order())
        })
    } else {
        None
    };
    let gname = identify(t.group()).unwrap_or_else(|| g.clone());
    if cli.json {
        let v = json!({
            "points": sys.points(),
            "group_order": t.group().order(),
            "group": gname,
            "minimal": report.minimal,
            "normal": report.is_normal(),
            "spectrum": spec.entries(),
            "mult_violations": report.mult_violations,
            "grouplike_violation": report.grouplike_violation.as_ref().map(|v| v.to_string()),
            "canonical_model": model,
            "table_hash": t.content_hash(),
        });
        writeln!(out, "{v}").unwrap();
        return Ok(0);
    }
    writeln!(out, "system: {} points, group {gname} of order {}", sys.points(), t.group().order()).unwrap();
    writeln!(out, "minimal: {}", if report.minimal { "yes" } else { "no" }).unwrap();
    writeln!(out, "irrep  degree  multiplicity").unwrap();
    for i in 0..t.len() {
        writeln!(out, "{:<6} {:>6}  {:>12}", irrep_name(i), t.degree(i), spec.mult(i)).unwrap();
    }
    let minimality = if report.minimal { "minimal" } else { "not minimal" };
    let mut verdict = format!("{minimality}; {}", report.diagnosis(irrep_name));
    if let Some(m) = &model {
        write!(verdict, "; canonical model: {m}").unwrap();
    }
    writeln!(out, "verdict: {verdict}").unwrap();
    Ok(0)
}

fn iso(
    ws: &mut Workspace,
    cli: &Cli,
    a: &str,
    b: &str,
    oracle: bool,
    certificate: Option<&str>,
    out: &mut String,
) -> Result<u8, CliError> {
    let sa = ws.load_system(a)?;
    let sb = ws.load_system(b)?;
    let (ga, gb) = (ws.system_group(&sa).to_string(), ws.system_group(&sb).to_string());
    if ga != gb {
        return Err(CliError::usage(format!("systems are over different groups ({ga} and {gb})")));
    }
    let t = ws.table(&ga)?;
    let (x, y) = (ws.system(&sa).clone(), ws.system(&sb).clone());
    let spectra_equal = point_spectrum(&t, &x)? == point_spectrum(&t, &y)?;
    let both_normal = is_normal(&t, &x)?.is_normal() && is_normal(&t, &y)?.is_normal();
    if !both_normal && !oracle {
        let which = if is_normal(&t, &x)?.is_normal() { 'b' } else { 'a' };
        return Err(CliError::usage(format!(
            "system {which} is not normal; the spectral decision does not apply (use --oracle)"
        )));
    }
    let decision = if both_normal { Some(normal_iso_decision(&t, &x, &y)?) } else { None };
    let brute = if oracle { Some(brute_force_iso(&x, &y)?) } else { None };
    if let (Some(d), Some(o)) = (&decision, &brute) {
        if d.is_some() != o.is_some() {
            return Err(CliError::internal("spectral decision and brute-force search disagree"));
        }
    }
    let map = decision.clone().flatten().or(brute.clone().flatten());
    if let (Some(path), Some(q)) = (certificate, &map) {
        let cert = json!({ "points": q.len(), "map": q });
        std::fs::write(path, cert.to_string()).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    }
    let isomorphic = map.is_some();
    let gassmann = !isomorphic && spectra_equal;
    if cli.json {
        let v = json!({
            "isomorphic": isomorphic,
            "spectra_equal": spectra_equal,
            "both_normal": both_normal,
            "method": if decision.is_some() { "spectral" } else { "brute-force" },
            "oracle_agrees": brute.as_ref().map(|o| decision.as_ref().is_none_or(|d| d.is_some() == o.is_some())),
            "certificate": map,
        });
        writeln!(out, "{v}").unwrap();
    } else {
        writeln!(out, "{}", if isomorphic { "ISOMORPHIC" } else { "NOT ISOMORPHIC" }).unwrap();
        writeln!(out, "spectra: {}", if spectra_equal { "EQUAL" } else { "different" }).unwrap();
        if decision.is_some() {
            writeln!(out, "method: spectral decision (both systems normal)").unwrap();
        } else {
            writeln!(out, "method: brute-force search (not both normal)").unwrap();
        }
        if brute.is_some() && decision.is_some() {
            writeln!(out, "oracle: agrees").unwrap();
        }
        if let Some(q) = &map {
            let s: Vec<String> = q.iter().map(usize::to_string).collect();
            writeln!(out, "certificate: {}", s.join(" ")).unwrap();
        }
        if gassmann {
            writeln!(out, "warning: equal point spectra but not isomorphic (Gassmann pair); the spectrum is a complete invariant only for normal systems").unwrap();
        }
    }
    Ok(if isomorphic { 0 } else { 1 })
}

fn verify(cli: &Cli, suite: &str, max_order: usize, out: &mut String) -> Result<u8, CliError> {
    let reports = run_suite(suite, max_order, cli.seed)
        .ok_or_else(|| CliError::usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))))?;
    let passed = reports.iter().all(|r| r.passed());
    if cli.json {
        writeln!(out, "{}", json!({ "suite": suite, "max_order": max_order, "passed": passed, "reports": reports })).unwrap();
    } else {
        for r in &reports {
            writeln!(out, "{} {} ({} checks)", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.checks).unwrap();
            for f in &r.failures {
                writeln!(out, "    counterexample: {f}").unwrap();
            }
        }
        writeln!(out, "suite {suite} (max order {max_order}): {}", if passed { "pass" } else { "FAIL" }).unwrap();
    }
    Ok(if passed { 0 } else { 1 })
}

fn gassmann(ws: &mut Workspace, cli: &Cli, reference: &str, out: &mut String) -> Result<u8, CliError> {
    let g = ws.load_group(reference)?;
    let group = ws.group(&g).clone();
    let found = gassmann_search(&group, Caps::global())?;
    if cli.json {
        let v = match &found {
            Some(p) => json!({
                "found": true,
                "points": p.a.points(),
                "first": p.first.members(),
                "second": p.second.members(),
                "character": p.character,
                "isomorphic": false,
            }),
            None => json!({ "found": false }),
        };
        writeln!(out, "{v}").unwrap();
        return Ok(0);
    }
    match found {
        Some(p) => {
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            writeln!(out, "pair found: two transitive actions on {} points", p.a.points()).unwrap();
            writeln!(out, "stabilizer 1 (order {}): {}", p.first.order(), list(p.first.members())).unwrap();
            writeln!(out, "stabilizer 2 (order {}): {}", p.second.order(), list(p.second.members())).unwrap();
            writeln!(out, "shared permutation character (per class): {}", list(&p.character)).unwrap();
            writeln!(out, "brute force: no equivariant bijection (stabilizers not conjugate)").unwrap();
        }
        None => writeln!(out, "none").unwrap(),
    }
    Ok(0)
}
