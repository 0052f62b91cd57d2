use fuchs_core::FgAbGroup;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

fn fuchs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuchs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    fuchs(args).status.code().expect("exited")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(fuchs(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

fn manifest(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(rel)
        .display()
        .to_string()
}

fn validator() -> &'static jsonschema::Validator {
    static CELL: OnceLock<jsonschema::Validator> = OnceLock::new();
    CELL.get_or_init(|| {
        let text = std::fs::read_to_string(manifest("../core/schema/verdict.schema.json")).unwrap();
        jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
    })
}

fn assert_valid(v: &Value) {
    let errors: Vec<String> = validator().iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn decide_exit_codes() {
    assert_eq!(code(&["decide", "--class", "any", "Z/4Z x Z/16Z"]), 0);
    assert_eq!(code(&["decide", "--class", "any", "Z/4Z x Z/32Z"]), 1);
    assert_eq!(code(&["decide", "--class", "tn", "Z/4Z x (Z/3Z)^5"]), 2);
    assert_eq!(code(&["decide", "--class", "tn", "Z/4Z x Z/3Z x"]), 3);
    assert_eq!(code(&["decide", "--class", "finite", "Z/2Z x Z"]), 3);
    assert_eq!(code(&["decide", "--class", "ring", "Z/2Z"]), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&[]), 3);
    assert_eq!(code(&["frobnicate"]), 3);
    assert_eq!(code(&["example", "paper-9-9"]), 3);
    assert_eq!(code(&["model", "no/such/file.tn"]), 3);
    assert_eq!(
        code(&["oracle", "radical", "--prime", "4", "--exp", "2"]),
        3
    );
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn rank_example() {
    let out = stdout(&["rank", "Z/8Z x Z/41Z"]);
    assert!(out.contains("g = 79"), "{out}");
    assert!(out.contains("r = 1"), "{out}");
    assert!(out.contains("case = C1"), "{out}");
    assert_eq!(code(&["rank", "Z/2Z x Z/4Z"]), 2);
}

#[test]
fn radical_oracle_lists_mismatches() {
    let out = fuchs(&["oracle", "radical", "--prime", "2", "--exp", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["oracle", "radical", "--prime", "2", "--exp", "3"]);
    let mismatches = v["mismatches"].as_array().unwrap();
    // 2Z/16Z: additive Z/8, adjoint Z/2 x Z/4
    assert!(mismatches
        .iter()
        .any(|m| m["additive"] == serde_json::json!([[2, 3, 1]])
            && m["adjoint"] == serde_json::json!([[2, 1, 1], [2, 2, 1]])));
    assert_eq!(v["byott"]["violations"], serde_json::json!([]));
}

#[test]
fn finring_file_and_corpus() {
    let file = manifest("tests/data/z4_t2.toml");
    let v = json(&["oracle", "finring", &file]);
    assert_eq!(v["rings"][0]["local_type"], serde_json::json!([2, 1]));
    // (Z/4[t]/(t^2))^* has order 8: units 1 + 2a + bt with a, b in Z/4
    assert_eq!(
        v["rings"][0]["unit_group"],
        serde_json::json!([[2, 1, 1], [2, 2, 1]])
    );
    assert_eq!(code(&["oracle", "finring", "--corpus"]), 0);
    assert_eq!(code(&["oracle", "finring"]), 3);
}

#[test]
fn examples_run() {
    let v = json(&["example", "paper-7-1"]);
    assert_eq!(v["sequence"]["splits"], Value::Bool(false));
    let file = manifest("../core/examples/paper-7-2-v2.tn");
    let v = json(&["model", &file, "--torsion-units"]);
    assert_eq!(v["torsion_units"], serde_json::json!([[2, 2, 2]]));
    assert_eq!(v["sequence"], Value::Null);
}

#[test]
fn every_subcommand_matches_schema() {
    let model = manifest("../core/examples/paper-7-2-v4.tn");
    let ring = manifest("tests/data/z4_t2.toml");
    let runs: Vec<Vec<&str>> = vec![
        vec!["decide", "--class", "any", "Z/4Z x Z/16Z"],
        vec!["decide", "--class", "any", "(Z/5Z)^2 x Z/600Z"],
        vec!["decide", "--class", "any", "Z/2Z x Z/2Z x Z/3Z x Z"],
        vec!["decide", "--class", "any", "Z/328Z x Z"],
        vec!["decide", "--class", "any", "Z/8Z x Z/8Z"],
        vec!["decide", "--class", "finite", "Z/24Z x (Z/5Z)^2"],
        vec!["decide", "--class", "finite", "Z/328Z"],
        vec!["decide", "--class", "tn", "Z/4Z x Z/7Z x Z/49Z"],
        vec!["decide", "--class", "tn", "Z/4Z x (Z/3Z)^4"],
        vec!["decide", "--class", "tn", "Z/4Z x (Z/3Z)^5"],
        vec!["rank", "Z/8Z x Z/41Z"],
        vec!["rank", "Z/2Z x Z/4Z"],
        vec!["oracle", "radical", "--prime", "3", "--exp", "2"],
        vec!["oracle", "radical", "--prime", "2", "--exp", "3"],
        vec!["oracle", "finring", &ring],
        vec!["model", &model],
        vec!["example", "paper-7-1"],
        vec!["table", "cyclic", "--max", "40"],
    ];
    for args in runs {
        assert_valid(&json(&args));
    }
}

#[test]
fn queries_round_trip() {
    for s in [
        "Z/600Z x (Z/5Z)^2",
        "Z^3 x Z/6Z",
        "Z/1Z",
        "Z/4Z x Z/2Z x Z/2Z x Z",
    ] {
        let v = json(&["decide", s]);
        let printed = v["query"].as_str().unwrap();
        let again: FgAbGroup = printed.parse().unwrap();
        assert_eq!(again, s.parse::<FgAbGroup>().unwrap());
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn table_is_deterministic_across_jobs() {
    let one = stdout(&["--jobs", "1", "table", "cyclic", "--max", "200"]);
    let many = stdout(&["--jobs", "4", "table", "cyclic", "--max", "200"]);
    assert_eq!(one, many);
    assert_eq!(one.lines().count(), 201);
}

#[test]
fn schema_rejects_malformed_verdicts() {
    let good = json(&["decide", "Z/4Z x Z/16Z"]);
    assert_valid(&good);
    let mut bad = good.clone();
    bad["verdict"] = "maybe".into();
    assert!(!validator().is_valid(&bad));
    let mut bad = good.clone();
    bad["certificate"]["kind"] = "bogus".into();
    assert!(!validator().is_valid(&bad));
    let mut bad = good;
    bad.as_object_mut().unwrap().remove("checked");
    assert!(!validator().is_valid(&bad));
}

#[test]
fn radical_cap_is_enforced() {
    // 5^4 = 625 exceeds the default radical cap
    assert_eq!(
        code(&["oracle", "radical", "--prime", "5", "--exp", "4"]),
        2
    );
}
