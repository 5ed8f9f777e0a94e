//! Text formats for groups, actions and measure systems.
//!
//! Cayley file: first line `n`, then `n` rows of `n` indices.
//! Permutation file: first line the degree, then one generator per line as
//! the image list of `0..degree`. Action file: a header
//! `group <path-or-id> points <k>`, then one image list per generator (per
//! element when the group comes from a Cayley file). A measure file adds a
//! line `weights p/q ...`. Blank lines and lines starting with `#` are
//! skipped; every error carries a 1-based line number.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::dynsys::TopSystem;
use crate::group::{FiniteGroup, PermutationGroup};
use crate::measure::{MeasureSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line, or 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError { line, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_indices(line: usize, s: &str) -> Result<Vec<usize>, FormatError> {
    s.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| FormatError::at(line, format!("expected an index, found {tok:?}"))))
        .collect()
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(FormatError::at(line, format!("expected a positive {what}, found {s:?}"))),
    }
}

pub fn parse_cayley(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| FormatError::at(0, "empty Cayley table"))?;
    let n = parse_count(l0, first, "order")?;
    let mut rows = Vec::with_capacity(n);
    let mut last = l0;
    for (ln, l) in lines {
        last = ln;
        if rows.len() == n {
            return Err(FormatError::at(ln, format!("extra row beyond the {n} declared")));
        }
        let row = parse_indices(ln, l)?;
        if row.len() != n {
            return Err(FormatError::at(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(FormatError::at(ln, format!("entry {bad} out of range 0..{n}")));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(FormatError::at(last, format!("{} rows, expected {n}", rows.len())));
    }
    FiniteGroup::from_cayley_table(&rows).map_err(|e| FormatError::at(0, e.to_string()))
}

pub fn write_cayley(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for a in g.elements() {
        let row: Vec<String> = g.row(a).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_permutations(text: &str) -> Result<PermutationGroup, FormatError> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or_else(|| FormatError::at(0, "empty permutation file"))?;
    let degree = parse_count(l0, first, "degree")?;
    let mut gens = Vec::new();
    for (ln, l) in lines {
        let p = parse_indices(ln, l)?;
        check_permutation(ln, &p, degree)?;
        gens.push(p);
    }
    PermutationGroup::generate(degree, &gens).map_err(|e| FormatError::at(0, e.to_string()))
}

fn check_permutation(line: usize, p: &[usize], degree: usize) -> Result<(), FormatError> {
    if p.len() != degree {
        return Err(FormatError::at(line, format!("{} images, expected {degree}", p.len())));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(FormatError::at(line, "not a permutation"));
        }
    }
    Ok(())
}

/// A resolved group reference and the generators an action file lists.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    /// Elements whose images an action file provides, in order.
    pub generators: Vec<usize>,
}

fn parse_builtin_factor(id: &str) -> Option<(Arc<FiniteGroup>, Vec<usize>)> {
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    let upper = id.to_ascii_uppercase();
    if upper == "GL32" || upper == "GL(3,2)" {
        let pg = PermutationGroup::gl32();
        return Some((pg.group.clone(), pg.generators.clone()));
    }
    let (head, tail) = upper.split_at(1.min(upper.len()));
    let n = num(tail)?;
    match head {
        "C" => {
            let g = Arc::new(FiniteGroup::cyclic(n).ok()?);
            Some((g, if n == 1 { vec![] } else { vec![1] }))
        }
        "S" | "A" => {
            let pg = if head == "S" { PermutationGroup::symmetric(n) } else { PermutationGroup::alternating(n) }.ok()?;
            Some((pg.group.clone(), pg.generators.clone()))
        }
        "D" if n >= 1 => Some((Arc::new(FiniteGroup::dihedral(n).ok()?), vec![1, n])),
        "Q" if n % 4 == 0 && n >= 4 => {
            let m = n / 4;
            Some((Arc::new(FiniteGroup::dicyclic(m).ok()?), vec![1, 2 * m]))
        }
        _ => None,
    }
}

/// Built-in ids: `C<n>`, `S<n>`, `A<n>`, `D<n>` (order `2n`), `Q<4m>`,
/// `GL32`, and `x`-separated products such as `S3xC2`.
pub fn builtin_group(id: &str) -> Option<GroupSpec> {
    let mut acc: Option<(Arc<FiniteGroup>, Vec<usize>)> = None;
    for factor in id.split(['x', 'X']) {
        let (g, gens) = parse_builtin_factor(factor)?;
        acc = Some(match acc {
            None => (g, gens),
            Some((a, agens)) => {
                let nb = g.order();
                let p = Arc::new(FiniteGroup::direct_product(&a, &g).ok()?);
                let all = agens.iter().map(|&x| x * nb).chain(gens.iter().copied()).collect();
                (p, all)
            }
        });
    }
    acc.map(|(group, generators)| GroupSpec { name: id.to_string(), group, generators })
}

/// `.perm` / `.perms` files are permutation files; anything else is a
/// Cayley table.
pub fn load_group_file(path: &Path) -> Result<GroupSpec, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::at(0, format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let is_perm = matches!(path.extension().and_then(|e| e.to_str()), Some("perm" | "perms"));
    if is_perm {
        let pg = parse_permutations(&text)?;
        Ok(GroupSpec { name, group: pg.group.clone(), generators: pg.generators.clone() })
    } else {
        let g = Arc::new(parse_cayley(&text)?);
        let generators = g.elements().collect();
        Ok(GroupSpec { name, group: g, generators })
    }
}

/// Resolves a built-in id, then a path relative to `base_dir`.
pub fn resolve_group(reference: &str, base_dir: &Path) -> Result<GroupSpec, FormatError> {
    if let Some(spec) = builtin_group(reference) {
        return Ok(spec);
    }
    let path: PathBuf = base_dir.join(reference);
    if !path.exists() {
        return Err(FormatError::at(0, format!("unknown group {reference:?}")));
    }
    load_group_file(&path)
}

struct ActionBody {
    spec: GroupSpec,
    system: TopSystem,
    weights: Option<(usize, String)>,
}

fn parse_action_body(text: &str, base_dir: &Path) -> Result<ActionBody, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::at(0, "empty action file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "group" || toks[2] != "points" {
        return Err(FormatError::at(hl, "expected header \"group <path-or-id> points <k>\""));
    }
    let spec = resolve_group(toks[1], base_dir).map_err(|e| FormatError::at(hl, e.message))?;
    let k = parse_count(hl, toks[3], "point count")?;
    let mut images = Vec::new();
    let mut weights = None;
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if let Some(rest) = l.strip_prefix("weights") {
            weights = Some((ln, rest.trim().to_string()));
            continue;
        }
        if images.len() == spec.generators.len() {
            return Err(FormatError::at(ln, format!("more than {} image lines", spec.generators.len())));
        }
        let p = parse_indices(ln, l)?;
        check_permutation(ln, &p, k)?;
        images.push((ln, p));
    }
    if images.len() != spec.generators.len() {
        return Err(FormatError::at(
            last,
            format!("{} image lines, expected {}", images.len(), spec.generators.len()),
        ));
    }
    let lists: Vec<Vec<usize>> = images.iter().map(|(_, p)| p.clone()).collect();
    let system = if spec.generators.is_empty() {
        TopSystem::trivial(spec.group.clone(), k)
    } else {
        TopSystem::from_generators(spec.group.clone(), &spec.generators, &lists)
    }
    .map_err(|e| {
        let line = images.first().map_or(hl, |(l, _)| *l);
        FormatError::at(line, e.to_string())
    })?;
    Ok(ActionBody { spec, system, weights })
}

pub fn parse_action(text: &str, base_dir: &Path) -> Result<(GroupSpec, TopSystem), FormatError> {
    let body = parse_action_body(text, base_dir)?;
    if let Some((ln, _)) = body.weights {
        return Err(FormatError::at(ln, "weights line in an action file"));
    }
    Ok((body.spec, body.system))
}

fn parse_weight(line: usize, tok: &str) -> Result<Weight, FormatError> {
    let bad = || FormatError::at(line, format!("expected a rational p/q, found {tok:?}"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Weight::new(p, q))
        }
        None => tok.parse::<i64>().map(Weight::from_integer).map_err(|_| bad()),
    }
}

pub fn parse_measure(text: &str, base_dir: &Path) -> Result<(GroupSpec, MeasureSystem), FormatError> {
    let body = parse_action_body(text, base_dir)?;
    let (ln, w) = body.weights.ok_or_else(|| FormatError::at(0, "missing weights line"))?;
    let weights = w.split_whitespace().map(|t| parse_weight(ln, t)).collect::<Result<Vec<_>, _>>()?;
    let m = MeasureSystem::new(body.system, weights).map_err(|e| FormatError::at(ln, e.to_string()))?;
    Ok((body.spec, m))
}

/// Writes an action file listing the images of `spec.generators`.
pub fn write_action(spec_ref: &str, spec: &GroupSpec, sys: &TopSystem) -> String {
    let mut out = format!("group {spec_ref} points {}\n", sys.points());
    for &g in &spec.generators {
        let row: Vec<String> = sys.action(g).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_roundtrip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(parse_cayley(&write_cayley(&g)).unwrap(), g);
        let c1 = parse_cayley("1\n0\n").unwrap();
        assert_eq!(c1.order(), 1);
    }

    #[test]
    fn cayley_errors_name_lines() {
        let e = parse_cayley("2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_cayley("# header\n3\n0 1 2\n1 2\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_cayley("3\n0 1 2\n1 2 0\n2 0 1\n0 0 0\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(parse_cayley("3\n0 1 2\n1 1 0\n2 0 1\n").is_err());
        assert_eq!(parse_cayley("").unwrap_err().line, 0);
    }

    #[test]
    fn permutation_files() {
        let pg = parse_permutations("3\n1 2 0\n1 0 2\n").unwrap();
        assert_eq!(pg.group.order(), 6);
        assert_eq!(parse_permutations("3\n1 1 0\n").unwrap_err().line, 2);
    }

    #[test]
    fn builtins() {
        let order = |id: &str| builtin_group(id).unwrap().group.order();
        assert_eq!(order("C4"), 4);
        assert_eq!(order("S3"), 6);
        assert_eq!(order("D4"), 8);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("GL32"), 168);
        assert_eq!(order("S3xC2"), 12);
        assert!(builtin_group("Z5").is_none());
        assert!(builtin_group("Q6").is_none());
    }

    #[test]
    fn action_files() {
        let dir = Path::new(".");
        let (_, sys) = parse_action("group C4 points 4\n1 2 3 0\n", dir).unwrap();
        assert!(sys.is_minimal());
        let (_, sys) = parse_action("group S3 points 3\n1 2 0\n1 0 2\n", dir).unwrap();
        assert_eq!(sys.points(), 3);
        let e = parse_action("group C2 points 3\n1 2 0\n", dir).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_action("group C2 pts 3\n", dir).unwrap_err();
        assert_eq!(e.line, 1);
        let (_, sys) = parse_action("group C1 points 2\n", dir).unwrap();
        assert_eq!(sys.orbits().len(), 2);
        let spec = builtin_group("C4").unwrap();
        let (_, back) = parse_action(&write_action("C4", &spec, &sys_c4()), dir).unwrap();
        assert_eq!(back, sys_c4());
    }

    fn sys_c4() -> TopSystem {
        TopSystem::regular(builtin_group("C4").unwrap().group)
    }

    #[test]
    fn measure_files() {
        let dir = Path::new(".");
        let (_, m) = parse_measure("group C2 points 2\n1 0\nweights 1/2 1/2\n", dir).unwrap();
        assert_eq!(m.weights()[0], Weight::new(1, 2));
        let e = parse_measure("group C2 points 2\n1 0\nweights 1/3 2/3\n", dir).unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_measure("group C2 points 2\n1 0\nweights 1/2 a\n", dir).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_measure("group C2 points 2\n1 0\n", dir).is_err());
    }

    #[test]
    fn files_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("v4.cayley"), "4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n").unwrap();
        std::fs::write(dir.path().join("s3.perm"), "3\n1 2 0\n1 0 2\n").unwrap();
        let text = "group v4.cayley points 2\n0 1\n1 0\n0 1\n1 0\n";
        let (spec, sys) = parse_action(text, dir.path()).unwrap();
        assert_eq!(spec.group.order(), 4);
        assert_eq!(sys.kernel().order(), 2);
        let (spec, _) = parse_action("group s3.perm points 2\n0 1\n1 0\n", dir.path()).unwrap();
        assert_eq!(spec.group.order(), 6);
        assert!(resolve_group("missing.cayley", dir.path()).is_err());
    }
}
