//! End-to-end tests of the `hpade` binary: emitted documents, exit codes,
//! byte stability, and re-parsing of emitted polynomials.

use std::path::PathBuf;
use std::process::{Command, Output};

use hermite_pade::{Field, PolyVector, Polynomial, RationalField, SeriesTuple};
use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hpade")
}

fn write_input(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const GEOMETRIC: &str = r#"{"m": 1, "series": [["1","0","0","0"], ["1","1","1","1"]]}"#;

#[test]
fn worked_example_emits_the_expected_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "geo.json", GEOMETRIC);
    let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "1"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["mode"], "hp");
    assert_eq!(doc["multiindex"], serde_json::json!([1, 0]));
    assert_eq!(doc["polys"], serde_json::json!([["1", "1"], ["-1"]]));
    assert_eq!(doc["predicted_order"], 2);
    assert_eq!(doc["verified_order"], 2);
    assert_eq!(doc["backend"], "rational");
}

#[test]
fn too_early_steps_exit_with_code_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "m2.json",
        r#"{"m": 2, "series": [["1","2"], ["1","1"], ["2","1"]]}"#,
    );
    let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("TOO_EARLY"), "stderr: {stderr}");
}

#[test]
fn degenerate_tuple_exits_with_code_2_and_no_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "dup.json",
        r#"{"m": 1, "series": [["1","2","3","4"], ["1","2","3","4"]]}"#,
    );
    let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no document on failure");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("DEGENERATE"), "stderr: {stderr}");
    assert!(stderr.contains("level 1"), "stderr: {stderr}");
}

#[test]
fn short_input_exits_with_code_3_naming_the_required_length() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "geo.json", GEOMETRIC);
    let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("EXHAUSTED"), "stderr: {stderr}");
    assert!(stderr.contains('7'), "required length named: {stderr}");
}

#[test]
fn malformed_inputs_exit_with_code_4() {
    let dir = tempfile::tempdir().unwrap();
    for (name, contents) in [
        ("bad.json", "not json"),
        ("mixed.json", r#"{"m": 1, "series": [["1"], ["1","2"]]}"#),
        ("rows.json", r#"{"m": 2, "series": [["1"], ["1"]]}"#),
        (
            "decimal.json",
            r#"{"m": 1, "series": [["1.5","0"], ["1","1"]]}"#,
        ),
    ] {
        let input = write_input(&dir, name, contents);
        let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "1"]);
        assert_eq!(out.status.code(), Some(4), "{name}");
    }
    let out = run(&["--mode", "hp", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(4), "missing input path");
}

#[test]
fn cfrac_reports_quotients_and_clean_termination() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "onez.json",
        r#"{"m": 1, "series": [["1","0","0","0","0"], ["1","1","0","0","0"]]}"#,
    );
    let out = run(&[input.to_str().unwrap(), "--mode", "cfrac", "--steps", "3"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["quotients"], serde_json::json!(["1", "1"]));
    assert_eq!(doc["terminated"], serde_json::json!(true));
}

#[test]
fn identical_runs_emit_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(&dir, "geo.json", GEOMETRIC);
    let args = [
        input.to_str().unwrap(),
        "--mode",
        "hp",
        "--steps",
        "1",
        "--oracle-check",
        "--verify-full",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text_args = [
        input.to_str().unwrap(),
        "--mode",
        "hp",
        "--steps",
        "1",
        "--emit",
        "text",
    ];
    let a = run(&text_args);
    let b = run(&text_args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emitted_polynomials_reparse_and_still_verify() {
    let dir = tempfile::tempdir().unwrap();
    let raw = r#"{"m": 2, "series": [
        ["2","1","4","1","5","9","2","6","5","3"],
        ["3","1","4","1","5","9","2","6","5","3"],
        ["5","3","5","8","9","7","9","3","2","3"]]}"#;
    let input = write_input(&dir, "triple.json", raw);
    let out = run(&[input.to_str().unwrap(), "--mode", "hp", "--steps", "4"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);

    let field = RationalField;
    let polys: Vec<Polynomial<RationalField>> = doc["polys"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let coeffs = p
                .as_array()
                .unwrap()
                .iter()
                .map(|c| field.parse(c.as_str().unwrap()).unwrap())
                .collect();
            Polynomial::from_coeffs(&field, coeffs)
        })
        .collect();
    let polys = PolyVector::new(polys);

    let input_doc: Value = serde_json::from_str(raw).unwrap();
    let rows: Vec<Vec<_>> = input_doc["series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|c| field.parse(c.as_str().unwrap()).unwrap())
                .collect()
        })
        .collect();
    let tuple = SeriesTuple::from_rows(field, rows).unwrap();
    let order = tuple.residual_order(&polys).unwrap();
    assert!(
        order.meets(5),
        "reparsed polynomials keep the tangency: {order:?}"
    );
}

#[test]
fn float_backend_accepts_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "exp.json",
        r#"{"m": 1, "series": [
            ["1","0","0","0","0","0"],
            ["1","1","0.5","0.16666666666666666","0.041666666666666664","0.008333333333333333"]]}"#,
    );
    let out = run(&[
        input.to_str().unwrap(),
        "--mode",
        "hp",
        "--steps",
        "3",
        "--backend",
        "float",
        "--tol",
        "1e-10",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert!(doc["backend"].as_str().unwrap().starts_with("float"));
    assert_eq!(doc["multiindex"], serde_json::json!([2, 1]));
}

#[test]
fn verify_full_reports_row_and_determinant_checks() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "pair.json",
        r#"{"m": 1, "series": [["2","1","4","1","5","9"], ["3","1","4","1","5","9"]]}"#,
    );
    let out = run(&[
        input.to_str().unwrap(),
        "--mode",
        "hp",
        "--steps",
        "3",
        "--verify-full",
        "--oracle-check",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["report"]["row_degrees_ok"], serde_json::json!(true));
    assert_eq!(doc["report"]["determinant_ok"], serde_json::json!(true));
    assert_eq!(doc["oracle_check"]["proportional"], serde_json::json!(true));
    assert_eq!(doc["oracle_check"]["kernel_dim"], serde_json::json!(1));
}

#[test]
fn start_flag_rotates_the_multiindex_family() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_input(
        &dir,
        "triple.json",
        r#"{"m": 2, "series": [
            ["2","1","4","1","5","9","2"],
            ["3","1","4","1","5","9","2"],
            ["5","3","5","8","9","7","9"]]}"#,
    );
    let out = run(&[
        input.to_str().unwrap(),
        "--mode",
        "hp",
        "--steps",
        "2",
        "--start",
        "1",
    ]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = stdout_json(&out);
    // First degree increment lands on function 1 instead of function 0.
    assert_eq!(doc["multiindex"], serde_json::json!([0, 1, 0]));
}

#[test]
fn bench_mode_reports_agreement() {
    let out = Command::new(bin())
        .args(["--mode", "bench", "--steps", "4"])
        .env("HPADE_SEED", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let cells = doc["bench"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    for cell in cells {
        assert_eq!(cell["agree"], serde_json::json!(true));
    }
}
