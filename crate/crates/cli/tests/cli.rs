use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_alphapf"));
    c.env_remove("ALPHAPF_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

/// 4x4 skew matrix with upper entries 1..6 (so pf = b01 b23 - b02 b13 + b03 b12 = 1·6 - 2·5 + 3·4 = 8).
const SKEW4: &str = r#"{"m": 2, "entries": [
  [0,0],[1,0],[2,0],[3,0],
  [-1,0],[0,0],[4,0],[5,0],
  [-2,0],[-4,0],[0,0],[6,0],
  [-3,0],[-5,0],[-6,0],[0,0]]}"#;

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn pf_alpha_minus_one_is_pf() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", SKEW4);
    let out = run(&["compute", "--pf", "--pf-alpha", "-1", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let pf = complex(&v["pf"]["value"]);
    assert!((pf.0 - 8.0).abs() < 1e-12 && pf.1 == 0.0);
    for key in ["dp", "bruteforce"] {
        let x = complex(&v["pf_alpha"][key]);
        assert!((x.0 - pf.0).abs() < 1e-12, "{key}: {x:?}");
    }
    assert_eq!(v["pf_alpha"]["agree"], Value::Bool(true));
}

#[test]
fn pf_alpha_zero_is_diagonal_product_exactly() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", SKEW4);
    let out = run(&["compute", "--exact", "--pf-alpha", "0", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    // B_01(1,1) B_01(2,2) = 1 · 6
    assert_eq!(v["pf_alpha"]["dp_exact"], Value::from("6"));
    assert_eq!(v["mode"], Value::from("exact"));
}

#[test]
fn permanent_of_all_ones() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n": 3, "entries": [[1,0],[1,0],[1,0],[1,0],[1,0],[1,0],[1,0],[1,0],[1,0]]}"#);
    let out = run(&["compute", "--det-alpha", "1", a.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("det_alpha.value = 6\n"), "{text}");
}

#[test]
fn complex_alpha_in_exact_mode() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", SKEW4);
    let out = run(&["compute", "--exact", "--pf-alpha", "1/2+3/4i", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pf_alpha"]["dp_exact"], v["pf_alpha"]["bruteforce_exact"]);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    assert_eq!(run(&["compute", "--pf", bad.to_str().unwrap()]).status.code(), Some(2));
    let nonskew = write(dir.path(), "ns.json", r#"{"m": 1, "entries": [[0,0],[1,0],[1,0],[0,0]]}"#);
    let out = run(&["compute", "--pf", nonskew.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("skew"));
    assert_eq!(run(&["compute", "--pf", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--pf-alpha", "x+", nonskew.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn failed_cross_check_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let b = write(dir.path(), "b.json", SKEW4);
    let out = run(&["compute", "--pf-alpha", "0.5", "--tol=-1", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["pf_alpha"]["agree"], Value::Bool(false));
}

#[test]
fn verify_list_and_suite() {
    let out = run(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for s in ["permcycle", "skewmat", "series", "alphapf", "pointproc", "schur", "positivity"] {
        assert!(text.contains(s), "{s} missing from {text}");
    }
    let out = run(&["verify", "--suite", "alphapf", "--m", "4", "--seed", "7", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8(out.stdout).unwrap().contains("all checks passed"));
}

#[test]
fn schur_both_methods_agree() {
    let out = run(&["schur", "--u", "0.3,0", "--v", "0.2,0", "--lambda", "1", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["agree"], Value::Bool(true));
    // 2uv / ((1 + uv)/(1 - uv)) with uv = 0.06
    let expected = 0.12 / (1.06 / 0.94);
    for m in ["matrix", "series"] {
        let x = complex(&v["rho"][m]["value"]);
        assert!((x.0 - expected).abs() < 1e-10, "{m}: {x:?}");
    }
    let out = run(&["schur", "--u", "0.3", "--v", "0.2", "--lambda", "2,1", "--method", "bruteforce", "--weight-cut", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["schur", "--u", "1.5,0", "--v", "0.2,0", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["schur", "--u", "0.3,0", "--v", "0.2,0", "--lambda", "2,2"]).status.code(), Some(2));
}

const KERNEL3: &str = r#"{"labels": ["a", "b", "c"], "entries": [
  [0,0],["1/10",0],["1/20",0],["-1/40",0],[0,0],["1/50",0],
  ["-1/10",0],[0,0],["1/30",0],[0,0],["1/25",0],["1/60",0],
  ["-1/20",0],["-1/30",0],[0,0],["1/15",0],["-1/80",0],[0,0],
  ["1/40",0],[0,0],["-1/15",0],[0,0],["1/90",0],["1/35",0],
  [0,0],["-1/25",0],["1/80",0],["-1/90",0],[0,0],["1/12",0],
  ["-1/50",0],["-1/60",0],[0,0],["-1/35",0],["-1/12",0],[0,0]]}"#;

#[test]
fn pointproc_cross_checks() {
    let dir = TempDir::new().unwrap();
    let k = write(dir.path(), "l.json", KERNEL3);
    let ks = k.to_str().unwrap();
    let out = run(&["pointproc", "--kernel", ks, "--alpha", "-1", "--points", "a,c", "--exact"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["rho_exact"], v["bruteforce"]["value_exact"]);
    let out = run(&["pointproc", "--kernel", ks, "--alpha", "-0.5", "--points", "b", "--k-max", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["agree"], Value::Bool(true));
    assert_eq!(run(&["pointproc", "--kernel", ks, "--alpha", "-1", "--points", "zz"]).status.code(), Some(2));
}

#[test]
fn scan_csv_is_reproducible_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let args = |out: &str| {
        vec![
            "positivity".to_string(),
            "scan".into(),
            "--m".into(),
            "3".into(),
            "--samples".into(),
            "30".into(),
            "--alpha-grid=-1:1:0.5".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            out.into(),
        ]
    };
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let ra = bin().args(args(a.to_str().unwrap())).args(["--threads", "1"]).output().unwrap();
    let rb = bin().args(args(b.to_str().unwrap())).env("ALPHAPF_THREADS", "3").output().unwrap();
    assert_eq!(ra.status.code(), Some(0));
    assert_eq!(rb.status.code(), Some(0));
    let (ca, cb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ca, cb);
    assert!(ca.starts_with("alpha,min_re,max_abs_im,violations,witness_id\n"));
    assert_eq!(ca.lines().count(), 6);
    let summary = String::from_utf8(ra.stdout).unwrap();
    assert!(summary.contains("no violation found in 30 samples"), "{summary}");
}

#[test]
fn classify_reports_class() {
    let dir = TempDir::new().unwrap();
    let j = write(dir.path(), "j.json", r#"{"m": 1, "entries": [[0,0],[2,0],[-2,0],[0,0]]}"#);
    let out = run(&["positivity", "classify", j.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["class"], Value::from("pd"));
    assert_eq!(v["hadamard"]["holds"], Value::Bool(true));
    let bad = write(dir.path(), "bad.json", SKEW4);
    assert_eq!(run(&["positivity", "classify", bad.to_str().unwrap()]).status.code(), Some(2));
}
