use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use toric_twistor::fibers::degree_matrix;
use toric_twistor::report::{AnalysisReport, ModelReport};
use toric_twistor::surface::ToricSurface;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-twistor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const HEXAGON: &str = r#"{"n": 1, "vectors": [[0,1],[1,1],[1,0]]}"#;
const N2: &str = r#"{"n": 2, "vectors": [[0,1],[1,1],[2,1],[1,0]]}"#;

#[test]
fn analyze_hexagon() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hex.json", HEXAGON);
    let out = json(&run(&["analyze", "--input", p(&input)]));
    assert_eq!(out["surface"]["selfInt"], serde_json::json!([-1, -1, -1, -1, -1, -1]));
    assert_eq!(
        out["degreeMatrix"],
        serde_json::json!([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    );
    let m: Vec<i64> = out["divisors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["m"].as_i64().unwrap())
        .collect();
    assert_eq!(m, [1, 1, 1]);
    assert_eq!(out["models"].as_array().unwrap().len(), 2);
    assert!(out["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn analyze_reports_non_bimeromorphic_pair() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n2.json", N2);
    let out = json(&run(&["analyze", "--input", p(&input), "--i", "1", "--j", "3"]));
    assert_eq!(out["models"][0]["degree"], 2);
    let warnings = out["warnings"].as_array().unwrap();
    assert!(
        warnings.iter().any(|w| w.as_str().unwrap().contains("d = 2")),
        "{warnings:?}"
    );
    assert!(!out["models"][0]["openModel"]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_json_exits_1() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", "{\"n\": 1, \"vectors\": [[0,1],");
    for cmd in ["analyze", "validate"] {
        let out = run(&[cmd, "--input", p(&input)]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
    }
}

#[test]
fn invalid_sequence_exits_1_with_violations() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rot.json", r#"{"n": 1, "vectors": [[1,0],[1,-1],[0,-1]]}"#);
    let out = run(&["validate", "--input", p(&input)]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["valid"], false);
    assert_eq!(report["violations"][0]["kind"], "endpointMismatch");
    assert_eq!(
        report["normalized"]["vectors"],
        serde_json::json!([[0, 1], [1, 1], [1, 0]])
    );

    let out = run(&["analyze", "--input", p(&input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn determinant_violation_is_reported() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "det.json", r#"{"n": 2, "vectors": [[0,1],[1,1],[1,2],[1,0]]}"#);
    let out = run(&["validate", "--input", p(&input)]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let kinds: Vec<&str> = report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"determinantViolation"), "{kinds:?}");
}

#[test]
fn validate_accepts_normalized_input() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n2.json", N2);
    let out = json(&run(&["validate", "--input", p(&input)]));
    assert_eq!(out["valid"], true);
    assert_eq!(out["violations"], serde_json::json!([]));
}

#[test]
fn enumerate_counts() {
    let out = json(&run(&["enumerate", "--n", "2", "--count-only"]));
    assert_eq!(out["count"], 2);
    assert!(out.get("sequences").is_none());

    let out = json(&run(&["enumerate", "--n", "3"]));
    assert_eq!(out["count"], 5);
    assert_eq!(out["sequences"].as_array().unwrap().len(), 5);
}

#[test]
fn enumerate_above_cap_exits_2() {
    let out = run(&["enumerate", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--n", "3", "--cap", "2", "--count-only"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_options_exit_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n2.json", N2);
    let cases: [&[&str]; 5] = [
        &["model", "--input", p(&input), "--i", "2", "--j", "2"],
        &["model", "--input", p(&input), "--i", "1", "--j", "5"],
        &["model", "--input", p(&input), "--i", "1", "--j", "2", "--roots", "1,1"],
        &["model", "--input", p(&input), "--i", "1", "--j", "2", "--roots", "2,1"],
        &["model", "--input", p(&input), "--i", "1", "--j", "2", "--roots", "x,1"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["model", "--input", p(&input)]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn model_hexagon_pair() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hex.json", HEXAGON);
    let out = json(&run(&[
        "model",
        "--input",
        p(&input),
        "--i",
        "1",
        "--j",
        "2",
        "--roots",
        "1",
    ]));
    assert_eq!(out["bundle"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(out["P"], serde_json::json!([["-1", "1"], ["0", "1"]]));
    assert_eq!(out["roots"], serde_json::json!(["0", "1"]));
    assert_eq!(out["meta"]["N"], 6);
    assert_eq!(
        out["openModel"]["equations"],
        serde_json::json!(["ξ1ξ2 = λ - 1", "ξ3ξ4 = λ"])
    );
}

#[test]
fn model_constants_scale_equations() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hex.json", HEXAGON);
    let out = json(&run(&[
        "model",
        "--input",
        p(&input),
        "--i",
        "1",
        "--j",
        "2",
        "--roots",
        "3/2",
        "--constants",
        "-2,1/3",
    ]));
    assert_eq!(out["P"], serde_json::json!([["3", "-2"], ["0", "1/3"]]));
    assert_eq!(out["c"], serde_json::json!(["-2", "1/3"]));
}

#[test]
fn classify_hexagon() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hex.json", HEXAGON);
    let out = json(&run(&[
        "classify",
        "--input",
        p(&input),
        "--i",
        "1",
        "--j",
        "2",
        "--roots",
        "1",
    ]));
    let kinds: Vec<(&str, &str)> = out["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["at"].as_str().unwrap(), f["kind"].as_str().unwrap()))
        .collect();
    assert_eq!(
        kinds,
        [
            ("inf", "FourPlanes"),
            ("0", "TwoQuadricCones"),
            ("1", "TwoQuadricCones"),
            ("2", "GenericFourNodal"),
        ]
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "hex.json", HEXAGON);
    let target = dir.path().join("report.json");
    let out = run(&["analyze", "--input", p(&input), "--output", p(&target)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&target).unwrap();
    let direct = run(&["analyze", "--input", p(&input)]).stdout;
    assert_eq!(written, direct);
}

#[test]
fn serialized_surface_reproduces_degrees() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n2.json", N2);
    let out = run(&["analyze", "--input", p(&input)]);
    let report: AnalysisReport = serde_json::from_slice(&out.stdout).unwrap();
    let surface: ToricSurface = serde_json::from_value(serde_json::to_value(&report.surface).unwrap()).unwrap();
    assert_eq!(degree_matrix(&surface), report.degree_matrix);
    assert_eq!(ToricSurface::build(&report.input).unwrap(), surface);
}

#[test]
fn full_model_has_mu_plus_two_equations() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n2.json", N2);
    // m = (2, 1, 2, 1), so the pair (1, 2) has μ = 1
    let out = run(&["model", "--input", p(&input), "--i", "1", "--j", "2", "--full"]);
    let report: ModelReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.equations.mu, 1);
    assert_eq!(report.equations.polys.len(), 3);
    assert_eq!(
        report.meta.n_coords - report.equations.m_i(),
        2 * report.equations.mu + 5
    );
}
