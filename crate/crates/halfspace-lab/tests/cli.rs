use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    lab_env(args, &[])
}

fn lab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_halfspace-lab"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

/// Header and records; the trailing `# config:` line is returned separately.
fn csv_table(text: &str) -> (Vec<String>, Vec<Vec<String>>, Value) {
    let (body, cfg) = text.trim_end().rsplit_once('\n').unwrap();
    let cfg: Value = serde_json::from_str(cfg.strip_prefix("# config: ").expect("config line")).unwrap();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows, cfg)
}

#[test]
fn identity_suite_passes_and_can_be_forced_to_fail() {
    let o = lab(&["check-identities", "--draws", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = lab(&["check-identities", "--draws", "2", "--threshold", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failed: skew_cauchy"));
    let o = lab(&["check-identities", "--draws", "2", "--json"]);
    let v = json(&o);
    assert_eq!(v["config"]["draws"], 2);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["residual"].is_number()));
}

#[test]
fn asep_simulation_is_a_reproducible_table() {
    let args = ["simulate", "asep", "--tau", "2", "--t", "0.4", "--runs", "300", "--first-seed", "9"];
    let a = lab(&args);
    let b = lab_env(&args, &[("HALFSPACE_LAB_THREADS", "1")]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "output depends on thread count");
    let (header, rows, cfg) = csv_table(&stdout(&a));
    assert_eq!(header, ["kind", "seed", "n_current", "mean", "se"]);
    assert_eq!(rows.len(), 301);
    assert_eq!(rows[0][1], "9");
    let summary = rows.last().unwrap();
    assert_eq!(summary[0], "summary");
    let mean: f64 = rows[..300].iter().map(|r| r[2].parse::<f64>().unwrap()).sum::<f64>() / 300.0;
    assert!((summary[3].parse::<f64>().unwrap() - mean).abs() < 1e-12);
    assert_eq!(cfg["config"]["tau"], 2.0);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"tau": 0.5, "runs": 4, "first_seed": 3}"#).unwrap();
    let p = path.to_str().unwrap();
    let o = lab(&["--config", p, "simulate", "asep", "--runs", "2"]);
    let (_, rows, cfg) = csv_table(&stdout(&o));
    assert_eq!(rows.len(), 3);
    assert_eq!(cfg["config"]["tau"], 0.5);
    assert_eq!(cfg["config"]["runs"], 2);
    assert_eq!(cfg["config"]["first_seed"], 3);
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("law.json");
    let o = lab(&["simulate", "sixvertex", "--n", "4", "--exact", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    let law = v["distribution"].as_object().unwrap();
    assert!(law.values().all(|e| e["matches_support_law"] == true));
    let total: f64 = law.values().map(|e| e["value"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(v["config"]["a"].as_array().unwrap().len(), 4);
}

#[test]
fn sampled_six_vertex_carries_error_bars() {
    let o = lab(&["simulate", "sixvertex", "--n", "3", "--samples", "2000", "--t", "0.3", "--a", "0.5,0.4,0.6"]);
    let v = json(&o);
    let law = v["distribution"].as_object().unwrap();
    assert_eq!(law.len(), 8);
    assert!(law.values().all(|e| e["se"].is_number()));
}

#[test]
fn exact_validation_passes() {
    let o = lab(&["validate", "thm41", "--n", "3", "--t", "2/5", "--a", "1/3,1/2,3/4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["six_vertex_total"], "1");
}

#[test]
fn current_observable_validation() {
    let o = lab(&["validate", "prop53", "--tau", "1", "--t", "0.4", "--runs", "40000"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    // an impossible bar turns the same run into a validation failure
    let o = lab(&["validate", "prop53", "--runs", "40000", "--max-se", "0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn goe_trend_reports_decrease() {
    let o = lab(&["validate", "goetrend", "--t", "0.25", "--T", "50,100", "--samples", "10000"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["decreasing"], true);
    assert_eq!(v["config"]["T"][1], 100.0);
}

#[test]
fn goe_table_has_a_fingerprint_in_every_row() {
    let o = lab(&["tabulate", "fgoe", "--from", "-1", "--to", "1", "--step", "0.5"]);
    assert_eq!(code(&o), 0);
    let (header, rows, _) = csv_table(&stdout(&o));
    assert_eq!(header, ["x", "f_goe", "imag_residue", "fingerprint"]);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| !r[3].is_empty()));
    let f: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(f.windows(2).all(|w| w[1] > w[0]));
    assert!((f[2] - 0.8319080662).abs() < 1e-9);
}

#[test]
fn kpz_table() {
    let o = lab(&["tabulate", "kpz", "--tau-hat", "0.5", "--zeta-grid", "-0.5"]);
    assert_eq!(code(&o), 0);
    let (header, rows, _) = csv_table(&stdout(&o));
    assert_eq!(header[4], "fingerprint");
    assert!((rows[0][2].parse::<f64>().unwrap() - 0.6574707866).abs() < 1e-9);
    assert!(!rows[0][4].is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&lab(&["no-such-command"])), 2);
    assert_eq!(code(&lab(&["simulate", "asep", "--runs", "many"])), 2);
    assert_eq!(code(&lab(&["simulate", "asep", "--t", "1.5"])), 2);
    assert_eq!(code(&lab(&["validate", "thm41", "--n", "3", "--a", "1/2"])), 2);
    assert_eq!(code(&lab(&["tabulate", "fgoe", "--step", "0"])), 2);
    assert_eq!(code(&lab_env(&["check-identities"], &[("HALFSPACE_LAB_THREADS", "x")])), 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&lab(&["--config", path.to_str().unwrap(), "simulate", "asep"])), 2);
    assert_eq!(code(&lab(&["--config", "/nonexistent/x.json", "simulate", "asep"])), 2);
    assert_eq!(code(&lab(&["--help"])), 0);
}
