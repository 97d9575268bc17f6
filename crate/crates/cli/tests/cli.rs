use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use liecov::liecore::catalog;
use liecov::polyalg::{bracket_maps, PolyMap};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_liecov"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to run liecov");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("output is not json")
}

const IDENTITY: &str = "1 : 1 0 0\n---\n1 : 0 1 0\n---\n1 : 0 0 1\n";

#[test]
fn sl2_basis_is_one_linear_generator() {
    let (code, out, _) = run(&["basis", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["r"], 1);
    assert_eq!(v["degrees"], serde_json::json!([1]));
    assert_eq!(v["generators"][0], IDENTITY);
}

#[test]
fn sl3_basis_degrees() {
    let (code, out, _) = run(&["--algebra", "sl3", "basis", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["r"], 2);
    assert_eq!(v["degrees"], serde_json::json!([1, 2]));
    assert_eq!(v["algebra"], "sl3");
}

#[test]
fn basis_text_lists_generators() {
    let (code, out, _) = run(&["--algebra", "sl2", "--rep", "irrep2", "basis"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# algebra sl2 rep irrep2 r 1 degrees 2"));
}

#[test]
fn degree_bound_too_small() {
    let (code, _, err) = run(&["--algebra", "sl3", "--degree-bound", "1", "basis"]);
    assert_eq!(code, 2);
    assert!(err.contains("degree bound"));
}

#[test]
fn missing_file_is_malformed_input() {
    let (code, _, err) = run(&["--algebra", "/nonexistent/alg.txt", "basis"]);
    assert_eq!(code, 1);
    assert!(err.contains("No such file"), "{err}");
    let (code, _, _) = run(&["decompose", "--input", "/nonexistent/map.txt"]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_catalog_entry() {
    let (code, _, err) = run(&["--algebra", "e8", "basis"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown catalog algebra"));
}

#[test]
fn decompose_generator_gives_unit_coefficient() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", IDENTITY);
    let (code, out, _) = run(&["decompose", "--input", s(&p), "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["coefficients"], serde_json::json!(["1 : 0 0 0\n"]));
    assert_eq!(v["verified"], true);
}

#[test]
fn decompose_rejects_non_covariant_map() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "1 : 1 0 0\n---\n---\n1 : 0 0 1\n");
    let (code, _, err) = run(&["decompose", "--input", s(&p)]);
    assert_eq!(code, 3);
    assert!(err.contains("defect along basis element"));
}

#[test]
fn pointwise_samples_recover_trace() {
    let dir = TempDir::new().unwrap();
    let pts = [[0.3, -0.7, 0.2], [1.1, 0.4, -0.9], [-0.5, 0.25, 0.6]];
    let mut text = String::new();
    let mut traces = Vec::new();
    for [h, e, f] in pts {
        // tr(x²) for x = h·H + e·E + f·F in the defining representation
        let t: f64 = 2.0 * h * h + 2.0 * e * f;
        text.push_str(&format!("{h} {e} {f} : {} {} {}\n", t * h, t * e, t * f));
        traces.push(t);
    }
    let path = write(&dir, "s.txt", &text);
    let (code, out, _) = run(&["decompose", "--samples", s(&path), "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    for (k, t) in traces.iter().enumerate() {
        let c = v["coefficients"][k][0].as_f64().unwrap();
        assert!((c - t).abs() <= 1e-9 * t.abs().max(1.0), "{c} vs {t}");
    }
}

#[test]
fn pointwise_rejects_off_centralizer_samples() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "s.txt", "1 0 0 : 0 1 0\n");
    let (code, _, err) = run(&["decompose", "--samples", s(&path)]);
    assert_eq!(code, 1);
    assert!(err.contains("not fixed by the centralizer"));
}

#[test]
fn divide_tangent_field_round_trip() {
    let g = Arc::new(catalog("sl2").unwrap());
    let y0 = PolyMap::parse("2 : 0 1 0\n---\n1 : 1 1 0\n-1 : 0 0 2\n---\n3 : 0 0 0\n", 3).unwrap();
    let x = bracket_maps(&g, &PolyMap::identity(3), &y0);
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", &x.to_text());
    let (code, out, _) = run(&["divide", "--input", s(&path), "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verified"], true);
    let y = PolyMap::parse(v["y"].as_str().unwrap(), 3).unwrap();
    assert_eq!(bracket_maps(&g, &PolyMap::identity(3), &y), x);
}

#[test]
fn divide_identity_is_not_tangent() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "x.txt", IDENTITY);
    let (code, _, err) = run(&["divide", "--input", s(&path)]);
    assert_eq!(code, 4);
    // the δ-component is κ(x, x) = 8h² + 8ef up to the generator's scale
    assert!(err.contains("tangency component 0"), "{err}");
    assert!(err.contains(": 2 0 0") && err.contains(": 0 1 1"), "{err}");
}

#[test]
fn realify_scrambled_basis() {
    let (code, out, _) = run(&["--algebra", "sl3", "--seed", "7", "realify", "--scramble", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verified"], true);
    let input: Vec<&str> = v["input_generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    assert!(input.iter().any(|g| g.contains(" i ")));
    for g in v["generators"].as_array().unwrap() {
        assert!(!g.as_str().unwrap().contains(" i "), "non-real output generator");
    }
    for step in v["steps"].as_array().unwrap() {
        assert_eq!(step["lambda_m_fixed"], true);
        assert_eq!(step["t_fixed"], true);
    }
}

#[test]
fn realify_input_file() {
    let dir = TempDir::new().unwrap();
    let gens = "1/2+1/2 i : 1 0 0\n---\n1/2+1/2 i : 0 1 0\n---\n1/2+1/2 i : 0 0 1\n";
    let path = write(&dir, "g.txt", gens);
    let (code, out, _) = run(&["realify", "--input", s(&path)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# verified true"));
    assert!(!out.contains(" i "));
}

#[test]
fn realify_rejects_non_covariant_input() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "g.txt", "1 : 1 0 0\n---\n---\n");
    let (code, _, _) = run(&["realify", "--input", s(&path)]);
    assert_eq!(code, 3);
}

#[test]
fn factor_sweep_on_sl2() {
    let (code, out, _) = run(&["factor", "--order", "3", "--invariant", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let fs = v["factorizations"].as_array().unwrap();
    assert!(!fs.is_empty());
    for f in fs {
        assert_eq!(f["invariant"], true);
    }
}

#[test]
fn factor_rejects_non_covariant_distribution() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "t.txt", "0 0 0 | 0 0 0 | 0 | 1\n");
    let (code, _, _) = run(&["factor", "--input", s(&path)]);
    assert_eq!(code, 3);
}

#[test]
fn factor_input_distribution() {
    let (_, sweep, _) = run(&["factor", "--order", "1", "--format", "json"]);
    let t = json(&sweep)["factorizations"][0]["distribution"].as_str().unwrap().to_string();
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "t.txt", &t);
    let (code, out, err) = run(&["factor", "--input", s(&path), "--invariant"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("# distribution 0 invariant true"));
    assert!(out.contains("# theta 1"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--algebra", "sl3", "--seed", "11", "realify", "--scramble", "--format", "json"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let (_, c, _) = run_env(&args, &[("LIECOV_THREADS", "1")]);
    assert_eq!(a, c);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("basis.json");
    let (code, out, _) = run(&["basis", "--format", "json", "--out", s(&path)]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["r"], 1);
}

#[test]
fn invalid_tolerance() {
    let (code, _, _) = run(&["--tol-input", "0", "basis"]);
    assert_eq!(code, 1);
}

#[test]
fn selftest_single_criterion() {
    let (code, out, _) = run(&["selftest", "--only", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"));
    let (code, _, _) = run(&["selftest", "--only", "11"]);
    assert_eq!(code, 1);
}
