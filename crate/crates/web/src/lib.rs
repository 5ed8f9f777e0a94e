//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each export takes a built-in group id or action-file text and returns a
//! JSON string. The `*_json` functions are plain Rust so they can be tested
//! natively.

use std::path::Path;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hvn_core::chartable;
use hvn_core::corpus::identify;
use hvn_core::duality::{common_kernel, enumerate_grouplike, GrouplikeSubset};
use hvn_core::dynsys::{is_normal, point_spectrum};
use hvn_core::formats::{builtin_group, parse_action, GroupSpec};
use hvn_core::group::quotient;

fn group(id: &str) -> Result<GroupSpec, String> {
    builtin_group(id.trim()).ok_or_else(|| format!("unknown group {:?}", id.trim()))
}

fn name_of(g: &std::sync::Arc<hvn_core::group::FiniteGroup>) -> String {
    identify(g).unwrap_or_else(|| format!("order {}", g.order()))
}

pub fn character_table_json(id: &str) -> Result<String, String> {
    let spec = group(id)?;
    let t = chartable::character_table(&spec.group).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> = (0..t.len()).map(|i| t.row(i).iter().map(|v| v.to_string()).collect()).collect();
    let body = t.export().body;
    Ok(json!({
        "group": name_of(&spec.group),
        "order": spec.group.order(),
        "root_order": body.root_order,
        "class_sizes": body.class_sizes,
        "degrees": t.degrees(),
        "rows": rows,
        "content_hash": t.content_hash(),
    })
    .to_string())
}

pub fn grouplike_lattice_json(id: &str) -> Result<String, String> {
    let spec = group(id)?;
    let t = chartable::character_table(&spec.group).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for s in enumerate_grouplike(&t) {
        let n = common_kernel(&t, s.members()).map_err(|e| e.to_string())?;
        let (h, _) = quotient(t.group(), &n).map_err(|e| e.to_string())?;
        out.push(json!({
            "members": s.members(),
            "kernel_order": n.order(),
            "quotient": name_of(&h),
        }));
    }
    Ok(json!({ "group": name_of(&spec.group), "degrees": t.degrees(), "subsets": out }).to_string())
}

/// Classifies an action file whose header names a built-in group.
pub fn classify_json(action: &str) -> Result<String, String> {
    let (spec, sys) = parse_action(action, Path::new("")).map_err(|e| e.to_string())?;
    let t = chartable::character_table(&spec.group).map_err(|e| e.to_string())?;
    let spec_p = point_spectrum(&t, &sys).map_err(|e| e.to_string())?;
    let report = is_normal(&t, &sys).map_err(|e| e.to_string())?;
    let model = if report.is_normal() {
        let sigma = GrouplikeSubset::new(&t, spec_p.support()).map_err(|e| e.to_string())?;
        let n = common_kernel(&t, sigma.members()).map_err(|e| e.to_string())?;
        let (h, _) = quotient(t.group(), &n).map_err(|e| e.to_string())?;
        Value::String(format!("rotation on {} (kernel of order {})", name_of(&h), n.order()))
    } else {
        Value::Null
    };
    let spectrum: Vec<Value> = (0..t.len())
        .map(|i| json!({ "irrep": i, "degree": t.degree(i), "multiplicity": spec_p.mult(i) }))
        .collect();
    Ok(json!({
        "group": name_of(&spec.group),
        "points": sys.points(),
        "minimal": report.minimal,
        "normal": report.is_normal(),
        "diagnosis": report.diagnosis(|i| format!("chi{i}")),
        "spectrum": spectrum,
        "canonical_model": model,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn character_table(id: &str) -> Result<String, JsValue> {
    character_table_json(id).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn grouplike_lattice(id: &str) -> Result<String, JsValue> {
    grouplike_lattice_json(id).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(action: &str) -> Result<String, JsValue> {
    classify_json(action).map_err(|e| JsValue::from_str(&e))
}
