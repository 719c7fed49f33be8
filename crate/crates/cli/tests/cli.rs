use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

#[path = "../src/document.rs"]
#[allow(dead_code)]
mod document;

const FIXTURES: [&str; 5] = ["norm_sqrt2", "quaternion_sqrt2", "triples", "segre_f5", "gamma_f2"];

fn norma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norma")).args(args).env_remove("NORMA_SEED").output().unwrap()
}

fn norma_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_norma"))
        .args(args)
        .env_remove("NORMA_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn result(out: &Output) -> Value {
    json(out)["tasks"][0]["result"].clone()
}

#[test]
fn reports_are_deterministic() {
    for name in FIXTURES {
        let a = norma(&["run", &fixture(name), "--seed", "7"]);
        let b = norma(&["run", &fixture(name), "--seed", "7"]);
        assert_eq!(a.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn fixtures_round_trip() {
    for name in FIXTURES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let doc: document::Document = serde_json::from_str(&text).unwrap();
        let again: document::Document = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again, "{name}");
        let reparsed = norma_stdin(&["run", "-"], &serde_json::to_string(&doc).unwrap());
        assert_eq!(reparsed.status.code(), Some(0), "{name}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_norma"))
        .args(["gamma-basis", "--n", "2", "--d", "2"])
        .env("NORMA_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
    assert_eq!(json(&norma(&["gamma-basis", "--n", "2", "--d", "2"]))["seed"], 0);
}

#[test]
fn subcommand_examples() {
    let out = norma(&["gamma-basis", "--n", "2", "--d", "3"]);
    let basis = result(&out)["basis"].as_array().unwrap().clone();
    assert_eq!(basis.len(), 4);
    assert_eq!(basis[0], serde_json::json!([0, 0, 0]));

    let out = norma(&["segre", "--perm", "(1 2)", "--r", "2", "--d", "2"]);
    assert_eq!(result(&out)["det"], "-1");

    let out = norma(&["a1d2", "--etale", "x^2-2", "--quaternion", "-1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&out)["dim_sym"], 10);

    let out = norma(&["norm", "--etale", "x^2-2", "--n", "2"]);
    assert_eq!(result(&out)["dimension"], 4);

    let out = norma(&["quadpair-split", "--ns", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result(&out)["size"], 8);
}

#[test]
fn exit_codes() {
    let non_associative = r#"{
        "domain": "Q",
        "algebras": { "A": { "kind": "custom", "table": [[["1","0"],["0","1"]],[["0","1"],["1","1"]]], "unit": ["0","1"] } },
        "tasks": []
    }"#;
    assert_eq!(norma_stdin(&["run", "-"], non_associative).status.code(), Some(3));
    let unknown_reference = r#"{ "domain": "Q", "tasks": [ { "name": "t", "op": "norm", "module": "M" } ] }"#;
    assert_eq!(norma_stdin(&["run", "-"], unknown_reference).status.code(), Some(3));
    assert_eq!(norma_stdin(&["run", "-"], "{ not json").status.code(), Some(2));
    let unknown_field = r#"{ "domain": "Q", "tasks": [], "extra": 1 }"#;
    assert_eq!(norma_stdin(&["run", "-"], unknown_field).status.code(), Some(2));
    let bad_scalar = r#"{ "domain": "Q", "algebras": { "K": { "kind": "quadratic", "c": "2/" } }, "tasks": [] }"#;
    assert_eq!(norma_stdin(&["run", "-"], bad_scalar).status.code(), Some(2));
    // the half trace needs 2 invertible
    let out = norma(&["a1d2", "--domain", "F_3", "--etale", "x^2-2", "--quaternion", "-1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = norma(&["a1d2", "--domain", "F_2", "--etale", "x^2+x+1", "--quaternion", "1,1"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["tasks"][0]["status"], "error");
    assert_eq!(norma(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(norma(&["verify-suite", "99"]).status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let out = norma(&["verify-suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["criteria"].as_array().unwrap().len(), 13);
    assert_eq!(report["fixtures"].as_array().unwrap().len(), FIXTURES.len());
    assert_eq!(report["passed"], true);
}
