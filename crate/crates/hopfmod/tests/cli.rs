use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfmod::parse_config;
use jsonschema::JSONSchema;
use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn config_path(name: &str) -> PathBuf {
    crate_dir().join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_config(args: &[&str], config: &Path) -> (i32, Value, Vec<u8>) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--config", config.to_str().unwrap()]);
    let out = run(&full);
    let json = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), json, out.stdout)
}

fn schema(name: &str) -> JSONSchema {
    let text = fs::read_to_string(crate_dir().join("schemas").join(name)).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema: &JSONSchema, value: &Value) {
    if let Err(errors) = schema.validate(value) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("schema violations: {msgs:?}");
    }
}

fn shipped_configs() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(crate_dir().join("configs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn shipped_configs_validate_and_round_trip() {
    let s = schema("config.schema.json");
    for path in shipped_configs() {
        let text = fs::read_to_string(&path).unwrap();
        assert_valid(&s, &serde_json::from_str(&text).unwrap());
        let first = parse_config(&text).unwrap().canonical_json();
        let second = parse_config(&first).unwrap().canonical_json();
        assert_eq!(first, second, "{}", path.display());
        assert_valid(&s, &serde_json::from_str(&first).unwrap());
    }
}

#[test]
fn reports_validate_and_are_deterministic() {
    let s = schema("report.schema.json");
    for path in shipped_configs() {
        let (code, json, bytes) = run_config(&["run"], &path);
        assert_valid(&s, &json);
        let (code2, _, bytes2) = run_config(&["run"], &path);
        assert_eq!(bytes, bytes2, "{}", path.display());
        assert_eq!(code, code2);
        assert!(bytes.ends_with(b"}\n"));
        let status = json["status"].as_str().unwrap();
        let all_pass = json["results"]
            .as_array()
            .unwrap()
            .iter()
            .all(|r| r["pass"] == true);
        assert_eq!(status == "pass", all_pass);
        assert_eq!(code, if all_pass { 0 } else { 1 });
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let klein = config_path("klein.json");
    let (_, _, stdout) = run_config(&["run"], &klein);
    let out = run(&[
        "run",
        "--config",
        klein.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&target).unwrap(), stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run_config(&["run"], &config_path("klein.json")).0, 0);
    let (code, json, _) = run_config(&["run"], &config_path("anisotropic.json"));
    assert_eq!(code, 1);
    assert_eq!(json["status"], "fail");
    assert_eq!(json["results"][0]["pass"], false);
    assert_eq!(json["results"][1]["pass"], true);
}

#[test]
fn error_taxonomy_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let klein_head =
        r#""p": 2, "n": 2, "lgroup": { "spec": "cyclic:3", "action": [[0, 1], [1, 1]] }"#;
    let cases: Vec<(&str, String)> = vec![
        ("malformed-json", "{ \"p\": 2,".into()),
        ("not-prime", r#"{ "p": 4, "n": 2 }"#.into()),
        (
            "singular-action",
            r#"{ "p": 2, "n": 2, "lgroup": { "spec": "cyclic:3", "action": [[1, 1], [1, 1]] } }"#
                .into(),
        ),
        (
            "not-homomorphism",
            r#"{ "p": 2, "n": 2, "lgroup": { "spec": "cyclic:2", "action": [[0, 1], [1, 1]] } }"#
                .into(),
        ),
        (
            "invalid-lgroup",
            r#"{ "p": 2, "n": 2, "lgroup": { "spec": "dihedral" } }"#.into(),
        ),
        (
            "unresolved-name",
            format!(r#"{{ {klein_head}, "modules": {{ "A": "B" }} }}"#),
        ),
        (
            "cycle",
            format!(r#"{{ {klein_head}, "modules": {{ "A": "B", "B": {{ "dual": "A" }} }} }}"#),
        ),
        (
            "invalid-module",
            format!(
                r#"{{ {klein_head}, "modules": {{ "A": {{ "matrices": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]] }} }} }}"#
            ),
        ),
        (
            "unsupported-field",
            format!(r#"{{ {klein_head}, "tasks": [{{ "task": "orbits", "e": 9 }}] }}"#),
        ),
        (
            "budget-exceeded",
            format!(
                r#"{{ {klein_head}, "modules": {{ "U": {{ "graded": {{ "0": {{ "quotient": [1] }} }} }} }},
                     "tasks": [{{ "task": "support", "module": "U", "e": 3 }}], "budgets": {{ "points": 4 }} }}"#
            ),
        ),
    ];
    let s = schema("report.schema.json");
    for (i, (kind, text)) in cases.iter().enumerate() {
        let path = write_temp(&dir, &format!("case{i}.json"), text);
        let (code, json, _) = run_config(&["run"], &path);
        assert_eq!(code, 2, "{kind}: {json}");
        assert_eq!(json["status"], "error");
        assert_eq!(json["error"]["kind"], *kind, "{json}");
        assert!(json["error"]["message"]
            .as_str()
            .is_some_and(|m| !m.is_empty()));
        assert_valid(&s, &json);
    }

    let missing = dir.path().join("absent.json");
    let (code, json, _) = run_config(&["run"], &missing);
    assert_eq!((code, json["error"]["kind"].as_str()), (2, Some("io")));

    let out = run(&["run"]);
    assert_eq!(out.status.code(), Some(2));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["error"]["kind"], "usage");

    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn malformed_json_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.json", "{\n  \"p\": 2,\n  \"n\": ,\n}");
    let (_, json, _) = run_config(&["run"], &path);
    assert_eq!(json["error"]["location"]["line"], 3);
}

#[test]
fn subcommands() {
    let klein = config_path("klein.json");
    let s = schema("report.schema.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["hopf-check"],
        vec!["tensor", "--module", "U_at_l", "--with", "U_at_1"],
        vec!["dual", "--module", "U_at_l", "--ext", "2"],
        vec!["projective", "--module", "kG"],
        vec!["support", "--module", r#"{"graded": {"1": "U"}}"#],
        vec!["complexity", "--module", "U_at_1"],
        vec!["profile", "--module", "U_at_l", "--nmax", "2"],
        vec!["orbits", "--side", "two-sided"],
        vec![
            "membership",
            "--module",
            "U_at_1",
            "--with",
            "lU_at_l",
            "--side",
            "left",
        ],
    ];
    for args in cases {
        let (code, json, _) = run_config(&args, &klein);
        assert_eq!(code, 0, "{args:?}: {json}");
        assert_valid(&s, &json);
        let results = json["results"].as_array().unwrap();
        assert_eq!(results.len(), 1);
        assert_eq!(results[0]["task"], args[0]);
    }
    let (_, json, _) = run_config(&["projective", "--module", "kG"], &klein);
    assert_eq!(json["results"][0]["result"]["projective"], true);
    let (_, json, _) = run_config(&["orbits", "--side", "two-sided"], &klein);
    assert_eq!(json["results"][0]["result"]["sides"][0]["count"], 1);
    let (_, json, _) = run_config(
        &[
            "membership",
            "--module",
            "U_at_1",
            "--with",
            "lU_at_l",
            "--side",
            "right",
        ],
        &klein,
    );
    assert_eq!(json["results"][0]["result"]["member"], false);
}

#[test]
fn ad_hoc_tasks_are_validated() {
    let klein = config_path("klein.json");
    let (code, json, _) = run_config(&["support", "--module", "Nope"], &klein);
    assert_eq!(
        (code, json["error"]["kind"].as_str()),
        (2, Some("unresolved-name"))
    );
    let (code, json, _) = run_config(&["orbits", "--ext", "0"], &klein);
    assert_eq!(
        (code, json["error"]["kind"].as_str()),
        (2, Some("unsupported-field"))
    );
}

#[test]
fn builtin_examples_report_shape() {
    let out = run(&["verify-paper-examples"]);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&schema("report.schema.json"), &json);
    let results = json["results"].as_array().unwrap();
    assert!(results.len() >= 12);
    let all_pass = results.iter().all(|r| r["pass"] == true);
    assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }));
    let again = run(&["verify-paper-examples"]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn schemas_reject_malformed_documents() {
    let config = schema("config.schema.json");
    let report = schema("report.schema.json");
    for bad in [
        r#"{ "n": 2 }"#,
        r#"{ "p": 2, "n": 2, "colour": "red" }"#,
        r#"{ "p": 2, "n": 2, "tasks": [{ "task": "levitate" }] }"#,
        r#"{ "p": 2, "n": 2, "tasks": [{ "task": "orbits", "side": "diagonal" }] }"#,
    ] {
        assert!(
            !config.is_valid(&serde_json::from_str(bad).unwrap()),
            "{bad}"
        );
    }
    let (_, good, _) = run_config(&["run"], &config_path("klein.json"));
    let mut no_status = good.clone();
    no_status.as_object_mut().unwrap().remove("status");
    let mut wrong_status = good.clone();
    wrong_status["status"] = "maybe".into();
    let mut short_hash = good;
    short_hash["config_hash"] = "abc".into();
    for bad in [no_status, wrong_status, short_hash] {
        assert!(!report.is_valid(&bad));
    }
}
