use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfcalc::{emit_report, parse_spec, parse_spec_str, Format};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn hopfcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcalc"))
        .args(args)
        .env_remove("HOPFCALC_CACHE")
        .output()
        .unwrap()
}

fn json_report(name: &str) -> Value {
    let out = hopfcalc(&[
        "--format",
        "json",
        "report",
        fixture(name).to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn tree_h_values() {
    let r = json_report("tree_h.json");
    let inv = &r["invariants"];
    assert_eq!(inv["euler"]["chi"], -2);
    assert_eq!(inv["sigma"], 0);
    assert_eq!(inv["kernel_dim"], 1);
    assert_eq!(inv["phi"]["lower"], 1);
    assert_eq!(inv["phi"]["upper"], 1);
    assert_eq!(
        inv["homology"]["ranks"],
        serde_json::json!([1, 0, 0, 4, 0, 0, 1])
    );
}

#[test]
fn tree_e8h_values() {
    let r = json_report("tree_e8h.json");
    let inv = &r["invariants"];
    assert_eq!(inv["euler"]["chi"], 14);
    assert_eq!(inv["sigma"], 8);
    assert_eq!(inv["kernel_dim"], 1);
    let form = &r["black_vertices"][0]["form"];
    assert_eq!(form["standard_form"]["p"], 1);
    assert_eq!(form["standard_form"]["q"], 1);
    let holds = |name: &str| {
        inv["verdicts"]
            .as_array()
            .unwrap()
            .iter()
            .find(|v| v["criterion"] == name)
            .map(|v| v["holds"].clone())
    };
    // odd chi and nonzero sigma both rule out a fibration over S^4
    assert_eq!(holds("euler"), Some(Value::Bool(false)));
    assert_eq!(holds("signature"), Some(Value::Bool(true)));
    assert_eq!(holds("additivity"), Some(Value::Bool(true)));
    assert_eq!(holds("homology-euler"), Some(Value::Bool(true)));
}

#[test]
fn products_values() {
    let r = json_report("products.json");
    assert_eq!(r["products"]["phi_lower"], 1);
    assert_eq!(r["products"]["phi_upper"], 24);
    assert_eq!(r["products"]["euler"], 24);
}

#[test]
fn spec_round_trips_through_report() {
    for name in [
        "tree_h.json",
        "tree_e8h.json",
        "products.json",
        "theta_odd.json",
        "family_e8h_h.json",
        "kpos_black_white.json",
        "kpos_two_black_e8h.json",
    ] {
        let parsed = parse_spec(&fixture(name)).unwrap();
        let doc = emit_report(&parsed, false).unwrap();
        let again = parse_spec_str(&doc.value["spec"].to_string()).unwrap();
        assert_eq!(again, parsed, "{name}");
    }
}

#[test]
fn deleted_edge_names_black_vertex() {
    let text = std::fs::read_to_string(fixture("tree_h.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["graphs"][0]["edges"].as_array_mut().unwrap().pop();
    v["graphs"][0]["vertices"].as_array_mut().unwrap().pop();
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "broken.json", &v.to_string());
    let out = hopfcalc(&["report", &p]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("graphs[0]") && err.contains("vertex 0"),
        "{err}"
    );
    assert!(err.contains("degree"), "{err}");
}

#[test]
fn nonzero_diagonal_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "m.json", "[[2, 1], [1, 0]]");
    let out = hopfcalc(&["check-link", "--matrix", &p, "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_input_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.json", "{not json");
    assert_eq!(hopfcalc(&["report", &p]).status.code(), Some(1));
    assert_eq!(
        hopfcalc(&["report", "/nonexistent/spec.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hopfcalc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hopfcalc(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_link_h() {
    let h = fixture("h.json");
    let out = hopfcalc(&[
        "--format",
        "json",
        "check-link",
        "--matrix",
        h.to_str().unwrap(),
        "--n",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["components"], 3);
    assert!(v["oracle"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    let rows = v["linking_matrix"].as_array().unwrap();
    for row in rows {
        let sum: i64 = row
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .sum();
        assert_eq!(sum, 0);
    }
}

#[test]
fn check_link_parity_mismatch() {
    let h = fixture("h.json");
    let out = hopfcalc(&["check-link", "--matrix", h.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_outputs() {
    let out = hopfcalc(&[
        "--format",
        "json",
        "classify",
        "--matrix",
        fixture("e8h.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["form"]["signature"], 8);
    assert_eq!(v["form"]["standard_form"]["name"], "1E8 + 1H");

    let out = hopfcalc(&[
        "classify",
        "--matrix",
        fixture("skew4.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("epsilon: -1"), "{text}");
}

#[test]
fn oracle_random_is_seeded() {
    let p = fixture("tree_e8h.json");
    let p = p.to_str().unwrap();
    let a = hopfcalc(&[
        "--format", "json", "--seed", "5", "oracle", p, "--random", "3",
    ]);
    let b = hopfcalc(&[
        "--format", "json", "--seed", "5", "oracle", p, "--random", "3",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 44);
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture("tree_e8h.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hopfcalc"))
            .args([
                "--format",
                "json",
                "report",
                "--oracle",
                p.to_str().unwrap(),
            ])
            .env("HOPFCALC_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(entries > 0);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), entries);
    assert_eq!(
        hopfcalc(&[
            "--format",
            "json",
            "report",
            "--oracle",
            p.to_str().unwrap()
        ])
        .stdout,
        first.stdout
    );
}

#[test]
fn text_and_json_agree_on_values() {
    let parsed = parse_spec(&fixture("theta_odd.json")).unwrap();
    let doc = emit_report(&parsed, true).unwrap();
    let text = doc.render(Format::Text);
    assert!(text.contains("chi: -4"), "{text}");
    assert!(!text.contains("spec:"));
    assert_eq!(doc.value["invariants"]["phi"]["upper"], 2);
}
