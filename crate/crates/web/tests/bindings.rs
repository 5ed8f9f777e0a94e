use hvn_web::{character_table_json, classify_json, grouplike_lattice_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn s3_table() {
    let v = parse(character_table_json("S3"));
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["class_sizes"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["rows"][2], serde_json::json!(["2", "-1", "0"]));
}

#[test]
fn unknown_group_is_an_error() {
    assert!(character_table_json("Z9").is_err());
}

#[test]
fn s3_lattice_matches_normal_subgroups() {
    // normal subgroups of S3: 1, A3, S3
    let v = parse(grouplike_lattice_json("S3"));
    let subsets = v["subsets"].as_array().unwrap();
    assert_eq!(subsets.len(), 3);
    let quotients: Vec<&str> = subsets.iter().map(|s| s["quotient"].as_str().unwrap()).collect();
    assert_eq!(quotients, ["C1", "C2", "S3"]);
}

#[test]
fn c4_lattice_is_a_chain() {
    let v = parse(grouplike_lattice_json("C4"));
    let orders: Vec<u64> = v["subsets"].as_array().unwrap().iter().map(|s| s["kernel_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [4, 2, 1]);
}

#[test]
fn classify_natural_s3() {
    let v = parse(classify_json("group S3 points 3\n1 2 0\n1 0 2\n"));
    assert_eq!(v["minimal"], true);
    assert_eq!(v["normal"], false);
    assert_eq!(v["canonical_model"], Value::Null);
}

#[test]
fn classify_regular_c4() {
    let v = parse(classify_json("group C4 points 4\n1 2 3 0\n"));
    assert_eq!(v["normal"], true);
    assert_eq!(v["canonical_model"], "rotation on C4 (kernel of order 1)");
}

#[test]
fn classify_reports_line_numbers() {
    let e = classify_json("group C4 points 4\n1 2 3 9\n").unwrap_err();
    assert!(e.starts_with("line 2"), "{e}");
}
