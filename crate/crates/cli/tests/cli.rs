use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(args)
        .env_remove("RAMSEY_REGISTRY")
        .output()
        .expect("binary runs")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

/// Parses stdout and validates it against the schema it names.
fn checked(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let doc: Value = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"));
    let name = doc["schema"].as_str().expect("schema field");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join(format!("{name}.json"))).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{doc}");
    doc
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn density_of_k5() {
    let out = ramsey(&["density", "--graph", "complete:5"]);
    assert_eq!(code(&out), 0);
    let doc = checked(&out);
    assert_eq!(doc["m2"], "3/1");
    assert_eq!(doc["strict"], true);
    assert_eq!(doc["witness"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn asym_density_and_order_error() {
    let out = ramsey(&["asym-density", "--h1", "K5", "--h2", "K3"]);
    assert_eq!(checked(&out)["value"], "20/7");
    let out = ramsey(&["asym-density", "--h1", "K3", "--h2", "K5"]);
    assert_eq!(code(&out), 3);
    let doc = checked(&out);
    assert_eq!(doc["error"]["kind"], "density-order");
}

#[test]
fn balance_check() {
    let out = ramsey(&["balance-check", "--graph", "C5", "--wrt", "P3"]);
    let doc = checked(&out);
    assert_eq!(doc["strictly_2_balanced"], true);
    assert_eq!(doc["balanced"], true);
    assert_eq!(doc["strictly_balanced_wrt"], true);
}

#[test]
fn arrows_r33() {
    let out = ramsey(&["arrows", "--host", "complete:6", "--red", "complete:3", "--blue", "complete:3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(checked(&out)["outcome"], "Ramsey");
    let out = ramsey(&["arrows", "--host", "K5", "--red", "K3", "--blue", "K3", "--symmetry-pruning"]);
    let doc = checked(&out);
    assert_eq!(doc["outcome"], "NotRamsey");
    assert_eq!(doc["certificate"]["red_edges"].as_array().unwrap().len(), 5);
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = ramsey(&["arrows", "--host", "K6", "--red", "K3", "--blue", "K3", "--budget", "10"]);
    assert_eq!(code(&out), 2);
    assert_eq!(checked(&out)["outcome"], "Unknown");
}

#[test]
fn good_coloring_robust_global() {
    let out = ramsey(&["good-coloring", "--host", "C5", "--red", "K2", "--blue", "P3"]);
    assert_eq!(checked(&out)["outcome"], "Absent");
    let out = ramsey(&[
        "robust-check",
        "--host",
        "K6",
        "--red",
        "K3",
        "--blue",
        "K3",
        "--forbidden",
        r#"{"forbidden_red":[],"forbidden_blue":[[0,1,2]]}"#,
    ]);
    assert_eq!(code(&out), 0);
    checked(&out);
    let out = ramsey(&["global-check", "--host", "K7", "--red", "K3", "--blue", "K3", "--mu", "5/7"]);
    let doc = checked(&out);
    assert_eq!(doc["outcome"], "NotRamsey");
    assert_eq!(doc["subset"].as_array().unwrap().len(), 5);
}

#[test]
fn hypothesis_reports() {
    let out = ramsey(&["verify-thm31", "--K", "K7", "--G", "cmm:7", "--H", "cmm:4", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let doc = checked(&out);
    assert_eq!(doc["conditions"][4]["status"], "Assumed");
    let out = ramsey(&["verify-thm32", "--K", "K5", "--G", "C5"]);
    let doc = checked(&out);
    assert!(doc["conditions"].as_array().unwrap().iter().all(|c| c["status"] == "Verified"));
}

#[test]
fn threshold_routes() {
    let out = ramsey(&["threshold", "--K", "complete:5", "--G", "complete:5", "--d", "1/2"]);
    assert_eq!(code(&out), 0);
    let doc = checked(&out);
    assert_eq!(doc["exponent"], "-7/20");
    assert_eq!(doc["provenance"], "clique-clique route, k=2, H=K3");
    let out = ramsey(&["threshold", "--K", "K5", "--G", "C6", "--d", "1/4"]);
    assert_eq!(checked(&out)["outcome"], "NoRoute");
    let out = ramsey(&["threshold", "--K", "K5", "--G", "C5", "--d", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn witnesses() {
    let out = ramsey(&[
        "witness31", "--n", "6", "--k", "2", "--K", "K3", "--H", "K2", "--G", "K3", "--p", "0",
    ]);
    let doc = checked(&out);
    assert_eq!(doc["witness"]["verified"], true);
    let out = ramsey(&["witness32", "--n", "12", "--k", "3", "--K", "K5", "--G", "C5", "--p", "1"]);
    let doc = checked(&out);
    assert_eq!(doc["witness"]["verified"], false);
}

#[test]
fn chromatic() {
    let doc = checked(&ramsey(&["chromatic", "--graph", "C5"]));
    assert_eq!(doc["chromatic_number"], 3);
    assert_eq!(code(&ramsey(&["chromatic", "--graph", "K21"])), 3);
}

#[test]
fn simulate_csv_and_json() {
    let args = [
        "simulate", "--base", "balanced:2", "--red", "K3", "--blue", "K3", "--n", "6", "--p", "0,1", "--trials", "5",
        "--seed", "3",
    ];
    let out = ramsey(&args);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        csv,
        "n,p,trials,ramsey,notramsey,unknown,wilson_low,wilson_high\n\
         6,0/1,5,0,5,0,0/1,434483/1000000\n\
         6,1/1,5,5,0,0,565517/1000000,1/1\n"
    );
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    checked(&ramsey(&json_args));
}

#[test]
fn output_independent_of_threads() {
    let base = [
        "simulate", "--base", "balanced:2", "--red", "K3", "--blue", "K3", "--n", "8,10", "--p", "1/10,3/10,1/2",
        "--trials", "12", "--seed", "11",
    ];
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut four = base.to_vec();
    four.extend(["--threads", "4"]);
    assert_eq!(ramsey(&one).stdout, ramsey(&four).stdout);
}

#[test]
fn config_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"command":"arrows","args":{"host":"K6","red":"K3","blue":"K3","symmetry-pruning":true,"budget":1000}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let doc = checked(&ramsey(&["--config", p]));
    assert_eq!(doc["outcome"], "Ramsey");
    assert_eq!(doc["budget"], 1000);
    // command-line flags override the manifest
    let doc = checked(&ramsey(&["--config", p, "--budget", "5"]));
    assert_eq!(doc["outcome"], "Unknown");
    let obj = dir.path().join("obj.json");
    std::fs::write(
        &obj,
        r#"{"command":"density","args":{"graph":{"family":"star-apex","t":4}}}"#,
    )
    .unwrap();
    let doc = checked(&ramsey(&["--config", obj.to_str().unwrap()]));
    assert_eq!(doc["m2"], "2/1");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let out = ramsey(&["--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert_eq!(checked(&out)["error"]["kind"], "config");
}

#[test]
fn input_errors_exit_3_with_distinct_messages() {
    let cases: [&[&str]; 5] = [
        &["density", "--graph", "bogus:3"],
        &["density", "--graph", "g6:~~"],
        &["global-check", "--host", "K5", "--red", "K3", "--blue", "K3", "--mu", "3/2"],
        &["arrows", "--host", "K5", "--red", "empty:3", "--blue", "K3"],
        &["verify-thm31", "--K", "K5", "--G", "K5", "--H", "K3", "--k", "2", "--registry", "/nonexistent.json"],
    ];
    let mut messages = Vec::new();
    for args in cases {
        let out = ramsey(args);
        assert_eq!(code(&out), 3, "{args:?}");
        messages.push(checked(&out)["error"]["message"].as_str().unwrap().to_string());
    }
    messages.sort();
    messages.dedup();
    assert_eq!(messages.len(), 5);
}

#[test]
fn registry_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    std::fs::write(&path, r#"[{"red":"K5","blue":"C5","citation":"local note"}]"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(["verify-thm31", "--K", "K5", "--G", "C5", "--H", "C5", "--k", "2"])
        .env("RAMSEY_REGISTRY", &path)
        .output()
        .unwrap();
    let doc = checked(&out);
    let z = &doc["conditions"][4];
    assert_eq!(z["status"], "Assumed");
    assert_eq!(z["evidence"]["citation"], "local note");
    std::fs::write(&path, "not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(["verify-thm32", "--K", "K5", "--G", "C5"])
        .env("RAMSEY_REGISTRY", &path)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert_eq!(checked(&out)["error"]["kind"], "registry");
}
