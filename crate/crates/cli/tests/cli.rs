use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn burn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burn")).args(args).env_remove("BURN_BUDGET_CELLS").output().unwrap()
}

fn write_config(dir: &Path, name: &str, cfg: Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, cfg.to_string()).unwrap();
    p
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr line");
    serde_json::from_str(line).unwrap()
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn geometry_queries() {
    assert_eq!(stdout_lines(&burn(&["geom", "ball", "2", "2"]))[0]["count"], 13);
    assert_eq!(stdout_lines(&burn(&["geom", "sphere", "3", "4"]))[0]["count"], 66);
    assert_eq!(stdout_lines(&burn(&["geom", "roundstar", "-2.6", "0.4"]))[0]["point"], json!([-3, 0]));
    let a = burn(&["geom", "sample", "3", "5", "20", "9"]);
    assert_eq!(a.stdout, burn(&["geom", "sample", "3", "5", "20", "9"]).stdout);
    for v in stdout_lines(&a) {
        let norm: i64 = v["point"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap().abs()).sum();
        assert_eq!(norm, 5);
    }
}

#[test]
fn simulate_skinny_triangle_writes_csv_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "skinny.json",
        json!({"strategy": {"kind": "skinny_triangle", "rho": 0.5},
               "growth": {"dimension": 2, "quadrant": {"kind": "linear", "c": 1.0}},
               "horizon": 4000}),
    );
    let csv = dir.path().join("skinny.csv");
    let out = burn(&["simulate", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 41);
    let last: f64 = rows.last().unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!((last - 0.75).abs() <= 0.02);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("skinny.json")).unwrap()).unwrap();
    assert_eq!(side["horizon"], 4000);
    assert_eq!(side["engine"], "balls");
}

#[test]
fn simulate_is_byte_identical_for_a_fixed_seed() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "epoch.json",
        json!({"strategy": {"kind": "epoch_random", "dimension": 2, "n1": 36},
               "growth": {"dimension": 2, "symmetric": {"kind": "power", "c": 1.0, "p": 1.5}},
               "horizon": 300, "stride": 5}),
    );
    let run = |seed: &str, engine: &str| {
        let out = burn(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", seed, "--engine", engine]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    assert_eq!(run("11", "auto"), run("11", "auto"));
    assert_eq!(run("11", "balls"), run("11", "frontier"));
    assert_ne!(run("11", "auto"), run("12", "auto"));
}

#[test]
fn stochastic_strategy_without_seed_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "epoch.json",
        json!({"strategy": {"kind": "epoch_random", "dimension": 2, "n1": 36},
               "growth": {"dimension": 2, "symmetric": {"kind": "power", "c": 1.0, "p": 1.5}},
               "horizon": 100}),
    );
    let out = burn(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"], "config");
}

#[test]
fn polar_spiral_keeps_positive_density() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "polar.json",
        json!({"strategy": {"kind": "polar_spiral", "c": 1.0},
               "growth": {"dimension": 2, "symmetric": {"kind": "power", "c": 1.0, "p": 1.5}},
               "horizon": 400, "stride": 10}),
    );
    let out = burn(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let n: u64 = line.split(',').next().unwrap().parse().unwrap();
        let d: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(n < 50 || d > 0.0, "{line}");
    }
}

#[test]
fn budget_variable_caps_exact_engines() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "origin.json",
        json!({"strategy": {"kind": "origin_only"},
               "growth": {"dimension": 2, "symmetric": {"kind": "linear", "c": 1.0}},
               "horizon": 2000, "engine": "frontier"}),
    );
    let out = Command::new(env!("CARGO_BIN_EXE_burn"))
        .args(["simulate", "--config", cfg.to_str().unwrap()])
        .env("BURN_BUDGET_CELLS", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "resource_budget");
}

#[test]
fn malformed_config_and_unknown_suite_exit_one() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "bad.json", json!({"strategy": {"kind": "nope"}, "horizon": 3}));
    assert_eq!(burn(&["simulate", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    let out = burn(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["exit_code"], 1);
    assert_eq!(burn(&["simulate"]).status.code(), Some(1));
}

#[test]
fn verify_engines_quick_passes() {
    let out = burn(&["verify", "--suite", "engines", "--scale", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
}

#[test]
fn verify_intersection_bound_reports_stated_domain_failure() {
    let out = burn(&["verify", "--suite", "lemma42", "--scale", "quick"]);
    assert_eq!(out.status.code(), Some(4));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let proof: Vec<&Value> = checks.iter().filter(|c| c["id"].as_str().unwrap().contains("proof_domain")).collect();
    assert!(!proof.is_empty() && proof.iter().all(|c| c["pass"] == true));
}
