use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn janet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_janet")).args(args).output().unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--json`, checks the exit code and the schema, and returns the report.
fn report(args: &[&str], code: i32) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = janet(&all);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    v
}

fn ok_cases() -> Vec<Vec<String>> {
    let cases: Vec<Vec<&str>> = vec![
        vec!["complete", "ideals/two_monomials.txt"],
        vec!["--division", "thomas", "complete", "ideals/four_monomials.txt"],
        vec!["--division", "pommaret", "mult-vars", "ideals/five_variable_quadrics.txt"],
        vec!["mult-vars", "ideals/four_monomials.txt"],
        vec!["comp-monomials", "ideals/two_monomials.txt"],
        vec!["invbasis", "ideals/two_conics.txt"],
        vec!["groebner", "ideals/two_conics.txt"],
        vec!["member", "ideals/two_conics.txt", "--poly", "x1*x2 - 3*x1^2 - 1"],
        vec!["hilbert", "ideals/plane_quadrics.txt", "--from", "0", "--to", "8"],
        vec!["characters", "ideals/plane_quadrics.txt", "--degree", "2"],
        vec!["pde", "analyze", "pde/weighted.txt"],
        vec!["pde", "analyze", "pde/second_order.txt"],
        vec!["pde", "analyze", "pde/monomial_complete.txt"],
        vec!["pde", "analyze", "pde/monomial_incomplete.txt"],
    ];
    cases
        .into_iter()
        .map(|c| {
            c.iter()
                .map(|a| if a.ends_with(".txt") { fixture(a) } else { a.to_string() })
                .collect()
        })
        .collect()
}

#[test]
fn every_command_succeeds_and_matches_the_schema() {
    for case in ok_cases() {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let v = report(&args, 0);
        assert_eq!(v["status"], "ok");
    }
}

#[test]
fn output_is_deterministic() {
    for case in ok_cases() {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        for json in [true, false] {
            let mut all = if json { vec!["--json"] } else { vec![] };
            all.extend_from_slice(&args);
            let a = janet(&all);
            let b = janet(&all);
            assert_eq!(a.stdout, b.stdout, "{all:?}");
            assert!(!a.stdout.is_empty());
        }
    }
}

#[test]
fn text_and_json_carry_the_same_values() {
    let p = fixture("ideals/plane_quadrics.txt");
    let text = String::from_utf8(janet(&["hilbert", &p, "--to", "6"]).stdout).unwrap();
    assert!(text.contains("  lambda: 1\n"));
    assert!(text.contains("  mu: 3\n"));
    assert!(text.starts_with("command: hilbert\n"));
}

#[test]
fn completion_report() {
    let v = report(&["complete", &fixture("ideals/two_monomials.txt")], 0);
    let r = &v["result"];
    assert_eq!(r["set"].as_array().unwrap().len(), 5);
    let added: Vec<&str> = r["added"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["monomial"].as_str().unwrap())
        .collect();
    assert_eq!(added, ["x3^2*x2^2", "x3^3*x2^2", "x3^3*x2*x1^2"]);
}

#[test]
fn pde_reports() {
    let v = report(&["pde", "analyze", &fixture("pde/monomial_complete.txt")], 0);
    assert_eq!(v["result"]["kind"], "monomial");
    assert_eq!(v["result"]["completed"], false);
    assert_eq!(v["result"]["compatibility"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["initial_conditions"]["degree_of_generality"], 2);

    let v = report(&["pde", "analyze", &fixture("pde/monomial_incomplete.txt")], 0);
    assert_eq!(v["result"]["completed"], true);
    assert_eq!(v["result"]["initial_conditions"]["entries"].as_array().unwrap().len(), 9);

    let v = report(&["pde", "analyze", &fixture("pde/weighted.txt")], 0);
    assert_eq!(v["result"]["verdict"], "canonical");
    assert_eq!(v["result"]["rounds"].as_array().unwrap().len(), 1);
}

#[test]
fn analytics_reports() {
    let v = report(
        &["hilbert", &fixture("ideals/plane_quadrics.txt"), "--from", "0", "--to", "8"],
        0,
    );
    assert_eq!(v["result"]["lambda"], 1);
    assert_eq!(v["result"]["mu"], 3);
    assert!(v["result"]["values"].as_array().unwrap()[2..].iter().all(|x| x["chi"] == 3));
}

#[test]
fn member_agrees_with_generators() {
    let p = fixture("ideals/two_conics.txt");
    let yes = report(&["member", &p, "--poly", "x2^2 - 2*x1*x2 + 1"], 0);
    assert_eq!(yes["result"]["member"], true);
    assert_eq!(yes["result"]["normal_form"], "0");
    assert!(yes["result"]["decomposition"].is_array());
    let no = report(&["member", &p, "--poly", "x1"], 0);
    assert_eq!(no["result"]["member"], false);
    assert!(no["result"]["decomposition"].is_null());
}

#[test]
fn weight_order_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    std::fs::write(&w, "1 2\n").unwrap();
    let order = format!("weight:{}", w.display());
    let v = report(&["--order", &order, "groebner", &fixture("ideals/two_conics.txt")], 0);
    assert_eq!(v["result"]["s_criterion"], true);

    std::fs::write(&w, "1 2 3\n").unwrap();
    let v = report(&["--order", &order, "groebner", &fixture("ideals/two_conics.txt")], 2);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn domain_errors_exit_with_one() {
    let v = report(&["--max-degree", "2", "invbasis", &fixture("ideals/two_conics.txt")], 1);
    assert_eq!(v["error"]["kind"], "cap-exceeded");
    assert!(v["error"]["witness"].is_string());

    let v = report(
        &[
            "--division",
            "thomas",
            "comp-monomials",
            &fixture("ideals/five_variable_quadrics.txt"),
        ],
        1,
    );
    assert_eq!(v["error"]["kind"], "unsupported-division");
    assert_eq!(v["error"]["witness"], "thomas");

    let v = report(&["hilbert", &fixture("ideals/two_conics.txt")], 1);
    assert_eq!(v["error"]["kind"], "not-homogeneous");

    let v = report(
        &["hilbert", &fixture("ideals/two_monomials.txt"), "--from", "0", "--to", "3"],
        1,
    );
    assert_eq!(v["error"]["kind"], "range-too-small");

    let v = report(&["--max-degree", "4", "complete", &fixture("ideals/two_monomials.txt")], 1);
    assert_eq!(v["error"]["kind"], "cap-exceeded");
    assert_eq!(v["error"]["witness"], "x3^3*x2^2");
}

#[test]
fn input_errors_exit_with_two() {
    let v = report(&["complete", "/nonexistent/ideal.txt"], 2);
    assert_eq!(v["error"]["kind"], "io");

    let v = report(&["member", &fixture("ideals/two_conics.txt"), "--poly", "x1^("], 2);
    assert_eq!(v["error"]["kind"], "parse");

    let v = report(&["complete", &fixture("ideals/two_conics.txt")], 2);
    assert_eq!(v["error"]["kind"], "parse");

    let v = report(&["--order", "revlex", "groebner", &fixture("ideals/two_conics.txt")], 2);
    assert_eq!(v["error"]["kind"], "parse");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "vars x y\nx + z\n").unwrap();
    let v = report(&["groebner", bad.to_str().unwrap()], 2);
    assert!(v["error"]["message"].as_str().unwrap().starts_with("line 2"));

    let out = janet(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_rejects_malformed_reports() {
    let v = validator();
    assert!(!v.is_valid(&json!({ "command": "complete", "status": "ok" })));
    assert!(!v.is_valid(&json!({ "command": "complete", "status": "error", "result": {} })));
    assert!(!v.is_valid(&json!({ "command": "hilbert", "status": "ok", "result": { "values": [] } })));
    assert!(v.is_valid(
        &json!({ "command": "hilbert", "status": "error", "error": { "kind": "io", "message": "", "witness": null } })
    ));
}
