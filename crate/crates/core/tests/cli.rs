use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lorentz3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz3"))
        .args(args)
        .env_remove("LORENTZ3_TOL")
        .output()
        .expect("binary runs")
}

fn validate(schema: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{schema}.schema.json"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&raw).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{schema}: {errors:#?}");
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_reports_validate() {
    for args in [
        vec!["classify", "--b", "2"],
        vec!["classify", "--b", "-1/4"],
        vec!["classify", "--b", "-3"],
        vec!["classify", "--b", "0"],
        vec!["classify", "--alpha", "1/3"],
        vec!["classify", "--class", "minkowski"],
        vec!["classify", "--class", "cw-hyperbolic"],
        vec!["classify", "--class", "cw-elliptic"],
        vec![
            "classify",
            "--derivation",
            r#"[["-2","0","0"],["0","-1","0"],["0","3","-1"]]"#,
        ],
    ] {
        validate("space_report", &stdout_json(&lorentz3(&args)));
    }
    let v = stdout_json(&lorentz3(&["classify", "--b", "2"]));
    assert_eq!(v["compact_model"], true);
}

#[test]
fn derivation_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"[[1,0,0],[0,0.25,0],[0,0,0.75]]"#).unwrap();
    let out = lorentz3(&["classify", "--derivation", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    validate("space_report", &v);
    assert!(v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("rationalized")));
}

#[test]
fn curvature_outputs() {
    let v = stdout_json(&lorentz3(&["curvature", "--b", "2", "--point", "1,0,0.5"]));
    validate("curvature_point", &v);
    let v = stdout_json(&lorentz3(&["curvature", "--alpha", "-1", "--point", "0.7,0.1,-0.3"]));
    validate("curvature_point", &v);
    let v = stdout_json(&lorentz3(&["curvature", "--class", "cw-elliptic", "--json"]));
    validate("curvature_summary", &v);
    assert_eq!(v["killing_ok"], true);
    assert_eq!(v["flat"], false);
    let v = stdout_json(&lorentz3(&["curvature", "--b", "0", "--json"]));
    assert_eq!(v["flat"], true);

    let out = lorentz3(&["curvature", "--b", "2", "--grid", "3,2,2:0.5..2,-1..1,-1..1"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..5], ["u", "v", "x", "max_abs_r", "max_abs_nabla_r"]);
    assert!(header[5..].iter().all(|h| h.starts_with("killing_")));
    assert_eq!(rdr.records().count(), 12);
}

#[test]
fn geodesic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("t.csv");
    let verdict = dir.path().join("v.json");
    let out = lorentz3(&[
        "geodesic",
        "--b",
        "2",
        "--samples",
        "3",
        "--out",
        traj.to_str().unwrap(),
        "--verdict",
        verdict.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed: "));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&verdict).unwrap()).unwrap();
    validate("geodesic_report", &v);
    assert_eq!(v["terminated"], "hit_domain_boundary");
    assert_eq!(v["completeness"]["families"]["timelike"]["verdict"], "incomplete");
    let text = std::fs::read_to_string(&traj).unwrap();
    assert!(text.starts_with("t,u,v,x,u_dot,v_dot,x_dot,norm\n"));
}

#[test]
fn geodesic_is_deterministic() {
    let args = [
        "geodesic",
        "--class",
        "cw-hyperbolic",
        "--samples",
        "2",
        "--json",
        "--seed",
        "7",
    ];
    let a = lorentz3(&args);
    let b = lorentz3(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    validate("geodesic_report", &serde_json::from_slice(&a.stdout).unwrap());
}

#[test]
fn transform_alpha_minus_one() {
    let v = stdout_json(&lorentz3(&[
        "transform",
        "--alpha",
        "-1",
        "--verify-grid",
        "5",
        "--point",
        "1,0,1",
    ]));
    validate("transform_report", &v);
    assert_eq!(v["b"], "2");
    assert!(v["pullback_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["passed"], true);
}

#[test]
fn survey_outputs() {
    let v = stdout_json(&lorentz3(&[
        "survey", "--from", "-1", "--to", "3", "--steps", "16", "--json",
    ]));
    validate("survey", &v);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 17);
    let compact: Vec<&str> = rows
        .iter()
        .filter(|r| r["compact_model"] == true)
        .map(|r| r["b"].as_str().unwrap())
        .collect();
    assert_eq!(compact, ["2"]);
    let out = lorentz3(&["survey", "--values", "0,-1/4,2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().starts_with("-1/4,NonUnimodularParabolic"));
}

#[test]
fn verify_all_passes() {
    let out = lorentz3(&["verify", "--suite", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&lorentz3(&["verify", "--suite", "metric", "--json"]));
    validate("verify_report", &v);
}

#[test]
fn exit_codes() {
    let out = lorentz3(&["classify", "--b", "2", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lorentz3(&["classify"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lorentz3(&["classify", "--b", "1", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(2));

    for args in [
        vec!["classify", "--derivation", "[[0,0,0],[0,1,0],[0,0,1]]"],
        vec!["classify", "--derivation", "[[1,0,0],[0,1,0],[0,0,1]]"],
        vec!["curvature", "--b", "2", "--point", "0,0,0"],
    ] {
        let out = lorentz3(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stderr).unwrap();
        validate("error", &v);
    }
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lorentz3"))
        .args(["transform", "--alpha", "2"])
        .env("LORENTZ3_TOL", "1e-20")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tol"], 1e-20);
    let out = Command::new(env!("CARGO_BIN_EXE_lorentz3"))
        .args(["transform", "--alpha", "2"])
        .env("LORENTZ3_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
