use std::process::Command;

fn qdiff(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdiff")).args(args).env_remove("HECKE_MEMORY_BUDGET").output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn computed(json: &str, check: &str) -> Vec<i64> {
    let rows: serde_json::Value = serde_json::from_str(json).unwrap();
    rows.as_array()
        .unwrap()
        .iter()
        .filter(|r| r["check"] == check)
        .map(|r| r["computed"].as_i64().unwrap())
        .collect()
}

#[test]
fn poincare_n2_ranks() {
    let (code, out, _) = qdiff(&["poincare", "--n", "2", "--tau", "+", "--kmax", "4", "--mode", "exact", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(computed(&out, "poincare_left"), vec![1, 4, 6, 4, 1]);
}

#[test]
fn biinv_n2_dims() {
    let (code, out, _) = qdiff(&["biinv", "--n", "2", "--kmax", "4", "--tau", "-", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(computed(&out, "poincare_biinv"), vec![1, 1, 0, 1, 1]);
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(qdiff(&["poincare", "--n", "0"]).0, 2);
    assert_eq!(qdiff(&["poincare", "--tau", "x"]).0, 2);
    assert_eq!(qdiff(&["poincare", "--mode", "modular", "--primes", "0"]).0, 2);
    assert_eq!(qdiff(&["frobnicate"]).0, 2);
}

#[test]
fn flag_order_does_not_matter() {
    let a = qdiff(&["dual", "--n", "2", "--no-timing", "--format", "csv"]);
    let b = qdiff(&["dual", "--format", "csv", "--no-timing", "--n", "2"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn modular_runs_are_reproducible() {
    let args = ["poincare", "--n", "2", "--kmax", "3", "--mode", "modular", "--seed", "11", "--no-timing", "--format", "json"];
    let a = qdiff(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, qdiff(&args));
    assert!(a.1.contains("\"mode\": \"modular\""));
}

#[test]
fn memory_budget_env_truncates() {
    let out = Command::new(env!("CARGO_BIN_EXE_qdiff"))
        .args(["poincare", "--n", "2", "--kmax", "4", "--tau", "+", "--format", "json"])
        .env("HECKE_MEMORY_BUDGET", "100000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"truncated\": true"));
}

#[test]
fn out_file_receives_report() {
    let dir = std::env::temp_dir().join(format!("qdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let (code, out, _) = qdiff(&["hecke-selftest", "--kmax", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("check,params"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spectrum_single_degree() {
    let (code, out, _) = qdiff(&["spectrum", "--n", "2", "--k", "2", "--tau", "+", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(computed(&out, "spectrum_rank"), vec![3, 3]);
}
