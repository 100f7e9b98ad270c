use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmx"))
        .args(args)
        .output()
        .unwrap()
}

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(name)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_fd_log() {
    let o = lmx(&["eval", sample("fd_log.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.38629436111989"), "{}", stdout(&o));
}

#[test]
fn eval_jsonl_carries_value() {
    let o = lmx(&[
        "eval",
        sample("fd_log.json").to_str().unwrap(),
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let re = v["value"][0][0][0].as_f64().unwrap();
    assert!((re - 4f64.ln()).abs() < 1e-12);
    for key in ["check", "anchor", "status", "residual", "tol", "reason"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_pde_f3_commuting() {
    let o = lmx(&[
        "verify-pde",
        sample("f3_commuting.json").to_str().unwrap(),
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l["status"] == "pass"));
}

#[test]
fn verify_integral_fc_is_skipped() {
    let o = lmx(&["verify-integral", sample("fc.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("SKIPPED") && out.contains("no integral representation in simple form"),
        "{out}"
    );
}

#[test]
fn run_lists_every_check() {
    let o = lmx(&[
        "run",
        sample("fd_log.json").to_str().unwrap(),
        "--format",
        "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn failing_checks_exit_1() {
    let dir = TempDir::new().unwrap();
    // B1 and C1 do not commute
    let path = write(
        &dir,
        "f3.json",
        &std::fs::read_to_string(sample("f3_commuting.json"))
            .unwrap()
            .replace(
                r#""C1": [[[2.25, 0], [0.25, 0]], [[0, 0], [2.5, 0]]]"#,
                r#""C1": [[[2.25, 0], [0, 0]], [[0.25, 0], [2.5, 0]]]"#,
            ),
    );
    let o = lmx(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL    B1C1 = C1B1"), "{}", stdout(&o));
    let o = lmx(&["verify-pde", &path]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let base = std::fs::read_to_string(sample("fd_log.json")).unwrap();
    let bad_id = write(&dir, "id.json", &base.replace("\"FD\"", "\"F15\""));
    let o = lmx(&["eval", &bad_id]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("valid ids"), "{}", stderr(&o));

    let ragged = write(
        &dir,
        "ragged.json",
        &base.replace(r#""C": [[[2, 0]]]"#, r#""C": [[[2, 0], [1, 0]]]"#),
    );
    let o = lmx(&["eval", &ragged]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parameters.C"), "{}", stderr(&o));

    let o = lmx(&["eval", "/nonexistent/problem.json"]);
    assert_eq!(o.status.code(), Some(2));

    // outside the unit disc the integral representation has no meaning
    let far = write(
        &dir,
        "far.json",
        &base.replace("[[[0.5, 0]]]", "[[[1.5, 0]]]"),
    );
    let o = lmx(&["verify-integral", &far]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("domain"), "{}", stderr(&o));
}

#[test]
fn numerical_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let base = std::fs::read_to_string(sample("fd_log.json")).unwrap();
    // C at a pole of the gamma function
    let pole = write(
        &dir,
        "pole.json",
        &base.replace(r#""C": [[[2, 0]]]"#, r#""C": [[[-1, 0]]]"#),
    );
    let o = lmx(&["verify-integral", &pole]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn seeded_runs_are_deterministic() {
    let p = sample("f3_commuting.json");
    let a = lmx(&[
        "necessity",
        p.to_str().unwrap(),
        "--seed",
        "5",
        "--format",
        "jsonl",
    ]);
    let b = lmx(&[
        "necessity",
        p.to_str().unwrap(),
        "--seed",
        "5",
        "--format",
        "jsonl",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}
