use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn corrwish(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrwish")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL: &str = r#"{
  "beta": 2, "p": 8, "n": 24, "trials": 300,
  "spectrum": {"kind": "uniform", "mean": 1.0, "var_exponent": 1.75},
  "edges": ["max", "min"], "seed": 11
}"#;

#[test]
fn simulate_writes_artifacts_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL);
    let out = dir.path().join("run");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["samples.csv", "summary.json", "hist_max.csv", "hist_min.csv", "manifest.json"] {
        assert!(out.join(name).exists(), "{name}");
    }
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 11);
    assert!(manifest["config_hash"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(manifest["config"]["trials"], 300);
    assert!(manifest["config"].get("out_dir").is_none());

    // the embedded config alone reproduces the run
    let replay = write(dir.path(), "replay.json", &manifest["config"].to_string());
    let out2 = dir.path().join("replay");
    let o = corrwish(&["simulate", "--config", &replay, "--out", out2.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let again: serde_json::Value = serde_json::from_str(&fs::read_to_string(out2.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config_hash"], again["config_hash"]);
    assert_eq!(fs::read(out.join("samples.csv")).unwrap(), fs::read(out2.join("samples.csv")).unwrap());
}

#[test]
fn csv_outputs_do_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL);
    let run = |threads: &str| {
        let out = dir.path().join(format!("t{threads}"));
        let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--threads", threads]);
        assert!(o.status.success(), "{}", stderr(&o));
        ["samples.csv", "hist_max.csv", "hist_min.csv"].map(|f| fs::read(out.join(f)).unwrap())
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL);
    let out = dir.path().join("s");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "99"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["seed"], 99);
}

#[test]
fn full_size_config_reports_aspect_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "large.json",
        r#"{"beta": 2, "p": 100, "n": 300, "trials": 200,
            "spectrum": {"kind": "uniform", "mean": 1.0, "var_exponent": 1.75},
            "edges": ["max"], "scaling_mode": "adjusted", "seed": 3}"#,
    );
    let out = dir.path().join("large");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert!((summary["gamma_squared"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn missing_beta_is_a_line_anchored_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{\n  \"p\": 8, \"n\": 24, \"trials\": 300,\n  \"spectrum\": {\"kind\": \"identity\"}, \"seed\": 1\n}\n");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad.json:4:1:") && err.contains("beta"), "{err}");

    let cfg = write(dir.path(), "syntax.json", "{\n  \"beta\": 2,\n  \"p\": 8 \"n\": 24\n}\n");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", dir.path().join("y").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("syntax.json:3:"), "{}", stderr(&o));
}

#[test]
fn check_flag_exits_2_above_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", SMALL);
    let out = dir.path().join("c");
    let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--check", "--ks-max", "1e-6"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(out.join("summary.json").exists());
    let o = corrwish(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--check", "--ks-max", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn tw_table_zero_row() {
    let o = corrwish(&["tw-table", "--from", "-1", "--to", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "chi,F1,f1,F2,f2,F4,f4");
    assert_eq!(text.lines().count(), 202);
    let row: Vec<f64> = text.lines().find(|l| l.starts_with("0,")).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!((row[3] - 0.96937).abs() < 1e-5, "{row:?}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = corrwish(&["tw-table", "--beta", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&path).unwrap().starts_with("chi,F2,f2\n-8,"));
    assert_eq!(corrwish(&["tw-table", "--beta", "3"]).status.code(), Some(1));
}

#[test]
fn oracle_single_eigenvalue_is_lower_incomplete_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"kind": "max_below_t", "beta": 2, "n": 3, "lambdas": [1.0], "thresholds": [0.5, 1, 2, 4, 8]}"#);
    let o = corrwish(&["oracle", "--config", &q]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "threshold,probability,est_error");
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let t: f64 = f[0].parse().unwrap();
        let v: f64 = f[1].parse().unwrap();
        // P(3, t) = 1 - e^{-t}(1 + t + t²/2)
        let expect = 1.0 - (-t).exp() * (1.0 + t + t * t / 2.0);
        assert!((v - expect).abs() < 1e-9, "t = {t}: {v} vs {expect}");
    }
}

#[test]
fn oracle_reports_route_disagreement_and_rejects_other_betas() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"kind": "min_above_s", "n": 6, "lambdas": [0.8, 1.0, 1.2], "thresholds": [0.1, 0.5]}"#);
    let o = corrwish(&["oracle", "--config", &q]);
    assert!(o.status.success(), "{}", stderr(&o));
    for line in stdout(&o).lines().skip(1) {
        let err: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(err < 1e-9);
    }
    let q = write(dir.path(), "b.json", r#"{"kind": "min_above_s", "beta": 1, "n": 6, "lambdas": [1.0], "thresholds": [0.1]}"#);
    assert_eq!(corrwish(&["oracle", "--config", &q]).status.code(), Some(1));
}

#[test]
fn condition_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "id.json", r#"{"p": 10, "spectrum": {"kind": "identity"}}"#);
    let o = corrwish(&["condition", "--config", &q, "--n", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], true);

    let q = write(dir.path(), "wide.json", r#"{"p": 100, "n": 300, "spectrum": {"kind": "uniform", "mean": 1.0, "var_exponent": 0.5}}"#);
    assert_eq!(corrwish(&["condition", "--config", &q]).status.code(), Some(2));
    let q = write(dir.path(), "none.json", r#"{"lambdas": [1.0, 2.0]}"#);
    assert_eq!(corrwish(&["condition", "--config", &q]).status.code(), Some(1));
}
