use std::process::{Command, Output};

use serde_json::Value;

fn catlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_csv_contains_known_row() {
    let o = catlie(&["dims", "--max-m", "4", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,hom_dim,delta1_dim,ce_dims"));
    assert!(text.lines().any(|l| l.starts_with("4,2,22,")), "{text}");
}

#[test]
fn homology_json_roundtrip() {
    let o = catlie(&["homology", "--max-m", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["command"], "homology");
    assert_eq!(v["config"]["max_m"], 3);
    let cells = v["cells"].as_array().unwrap();
    let keys: Vec<(u64, u64)> = cells.iter().map(|c| (c["m"].as_u64().unwrap(), c["n"].as_u64().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let cell = cells.iter().find(|c| c["m"] == 2 && c["n"] == 1).unwrap();
    assert_eq!((cell["h0"].as_u64(), cell["h1"].as_u64()), (Some(0), Some(1)));
    assert!(v["suites"].as_array().unwrap().is_empty());
}

#[test]
fn homology_kernels_listed() {
    let o = catlie(&["homology", "--max-m", "2", "--format", "json", "--kernels"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cell = v["cells"].as_array().unwrap().iter().find(|c| c["m"] == 2 && c["n"] == 1).unwrap();
    assert_eq!(cell["kernel"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_defaults_to_all_suites() {
    let o = catlie(&["verify", "--max-m", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let suites: Vec<&str> = v["config"]["suites"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(suites, ["catlie", "mudelta", "dg", "ce", "qsn", "oracle"]);
    let checks = v["suites"].as_array().unwrap();
    for name in ["dimension-law", "associativity", "leibniz", "quasi-iso", "yoneda", "oracle"] {
        assert!(checks.iter().any(|c| c["name"] == name && c["pass"] == true), "{name}");
    }
}

#[test]
fn verify_selected_suite_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = catlie(&["verify", "--suite", "catlie,oracle", "--max-m", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("suite,name,pass,cases\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("catlie,") || l.starts_with("oracle,")));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--max-m", "3", "--format", "json", "--seed", "7"];
    assert_eq!(stdout(&catlie(&args)), stdout(&catlie(&args)));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(catlie(&["dims", "--max-m", "0"]).status.code(), Some(2));
    assert_eq!(catlie(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(catlie(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn export_basis_order() {
    let o = catlie(&["export-basis", "--m", "2", "--n", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["terms"][0]["words"], serde_json::json!([[0, 1]]));
    let o = catlie(&["export-basis", "--m", "4", "--n", "2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 23);
}
