//! End-to-end checks of the installed binary: artifact round-trips, the
//! verify/validate exit-code contract, tamper detection, and determinism
//! of the written report modulo its timestamp.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cayham"))
}

fn report_value(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    // The one field allowed to differ between identical runs.
    v.as_object_mut().unwrap().remove("generated_at");
    v
}

#[test]
fn verify_then_validate_chain() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("run.json");
    let status = bin()
        .args(["verify", "--k-max", "3", "--out"])
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(report.exists());
    assert!(dir.path().join("run.certs.jsonl").exists());

    let status = bin().arg("validate-certs").arg(&report).status().unwrap();
    assert!(status.success());
}

#[test]
fn tampered_certificate_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("run.json");
    assert!(bin()
        .args(["verify", "--k-max", "2", "--out"])
        .arg(&report)
        .status()
        .unwrap()
        .success());

    let certs_path = dir.path().join("run.certs.jsonl");
    let mut lines: Vec<Value> = std::fs::read_to_string(&certs_path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let victim = lines
        .iter_mut()
        .find(|c| c["vertices"].as_array().unwrap().len() > 2)
        .expect("some cycle long enough to scramble");
    let id = victim["id"].as_u64().unwrap();
    // Repeating a vertex breaks the distinctness check in any graph.
    let verts = victim["vertices"].as_array_mut().unwrap();
    verts[1] = verts[2].clone();
    let tampered: String = lines
        .iter()
        .map(|v| v.to_string() + "\n")
        .collect();
    std::fs::write(&certs_path, tampered).unwrap();

    let out = bin().arg("validate-certs").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains(&format!("bad certificate {id}")), "{stdout}");
}

#[test]
fn identical_runs_write_identical_reports() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let a = dir_a.path().join("run.json");
    let b = dir_b.path().join("run.json");
    for out in [&a, &b] {
        assert!(bin()
            .args(["verify", "--k-max", "3", "--seed", "99", "--out"])
            .arg(out)
            .status()
            .unwrap()
            .success());
    }
    assert_eq!(report_value(&a), report_value(&b));
    assert_eq!(
        std::fs::read_to_string(dir_a.path().join("run.certs.jsonl")).unwrap(),
        std::fs::read_to_string(dir_b.path().join("run.certs.jsonl")).unwrap()
    );
}

#[test]
fn seed_env_var_feeds_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("env.json");
    assert!(bin()
        .args(["verify", "--k-max", "2", "--out"])
        .arg(&report)
        .env("CAYHAM_SEED", "1234")
        .status()
        .unwrap()
        .success());
    let v = report_value(&report);
    assert_eq!(v["config"]["seed"], 1234);
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());

    let out = bin().args(["verify", "--k-max", "zero"]).output().unwrap();
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn missing_report_is_an_io_error() {
    let out = bin()
        .args(["validate-certs", "/nonexistent/report.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
