use std::process::{Command, Output};

use lie_cascade::cascade::CascadeTree;
use lie_cascade::IndexReport;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie-cascade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_listing() {
    let g2 = json(&["roots", "--type", "G2"]);
    assert_eq!(g2["count"], 6);
    assert_eq!(g2["family"], "G");
    assert_eq!(g2["highest_root"], serde_json::json!([3, 2]));
    assert_eq!(g2["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
    assert_eq!(json(&["roots", "--type", "A1"])["count"], 1);
    let e8 = json(&["roots", "--type", "E8"]);
    assert_eq!(e8["count"], 120);
    assert_eq!(e8["positive_roots"].as_array().unwrap().len(), 120);
}

fn count_nodes(v: &Value) -> usize {
    v.as_array()
        .unwrap()
        .iter()
        .map(|n| 1 + count_nodes(&n["children"]))
        .sum()
}

#[test]
fn cascade_trees() {
    let f4 = json(&["cascade", "--type", "F4"]);
    assert_eq!(count_nodes(&f4["nodes"]), 4);
    assert_eq!(f4["nodes"][0]["word"], "1");
    assert_eq!(f4["nodes"][0]["beta"], serde_json::json!([2, 3, 4, 2]));
    assert_eq!(count_nodes(&json(&["cascade", "--type", "A1"])["nodes"]), 1);
    let d5 = json(&["cascade", "--type", "D5"]);
    assert_eq!(count_nodes(&d5["nodes"]), 4);
    assert_eq!(d5["size"], 4);
}

#[test]
fn index_examples() {
    assert_eq!(json(&["index", "--type", "E6", "--algebra", "borel"])["index"], 2);
    assert_eq!(json(&["index", "--type", "C4", "--algebra", "borel"])["index"], 0);
    let dm = json(&["index", "--type", "A2", "--algebra", "d_m", "--parabolic", "1"]);
    assert_eq!(dm["index"], 0);
    assert_eq!(dm["algebra"], "d_m(A2; 1)");
    let m = json(&["index", "--type", "B3", "--algebra", "nilradical", "--parabolic", "1,3"]);
    assert_eq!(m["algebra"], "nilradical_m(B3; 1,3)");
}

#[test]
fn table_bound_one() {
    let t = json(&["table", "--rank-bound", "1"]);
    let rows = t.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["algebra"], "A1");
    assert_eq!(rows[0]["index"], 0);
}

#[test]
fn table_rows_are_consistent() {
    let t = json(&["table", "--rank-bound", "6"]);
    for row in t.as_array().unwrap() {
        assert_eq!(row["consistent"], true, "{row}");
        assert_eq!(row["index"], row["rank_minus_cascade"]);
    }
}

#[test]
fn identical_requests_give_identical_bytes() {
    for args in [
        &["index", "--type", "D5", "--seed", "7", "--samples", "5"][..],
        &["cascade", "--type", "E7", "--format", "tsv"][..],
        &["roots", "--type", "B4", "--format", "pretty"][..],
        &["verify", "--type", "B3", "--suite", "heisenberg,jacobi"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[derive(Serialize, Deserialize)]
struct RootsSchema {
    family: String,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
    highest_root: Vec<i32>,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct CascadeSchema {
    algebra: String,
    size: usize,
    nodes: Vec<CascadeTree>,
}

fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) {
    let out = run(args);
    let v: T = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, String::from_utf8(out.stdout).unwrap(), "{args:?}");
}

#[test]
fn json_round_trips() {
    round_trip::<RootsSchema>(&["roots", "--type", "F4"]);
    round_trip::<CascadeSchema>(&["cascade", "--type", "E6"]);
    round_trip::<IndexReport>(&["index", "--type", "A5"]);
    round_trip::<IndexReport>(&["index", "--type", "B3", "--algebra", "d_m", "--parabolic", "2"]);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "gamma-partition", "--type", "E7"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["passed"], 1);
    assert_eq!(v["outcomes"][0]["target"], "E7");

    let bad = run(&["verify", "--type", "A3,B2", "--suite", "jacobi", "--inject-fault", "sign-flip"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["failed"], 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["roots", "--type", "Z3"][..],
        &["roots", "--type", "B1"][..],
        &["index", "--type", "A2", "--algebra", "d_m", "--parabolic", "3"][..],
        &["index", "--type", "A2", "--algebra", "levi"][..],
        &["verify", "--suite", "nope"][..],
        &["table", "--rank-bound", "0"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn default_verify_run_passes() {
    let out = run(&["verify", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 400);
    assert!(!text.contains("\tFAIL\t"));
}
