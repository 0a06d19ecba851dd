use std::fs;
use std::process::{Command, Output};

use hypstable_cli::emit::Table;

fn hypstable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypstable"))
        .args(args)
        .env_remove("HYPSTABLE_PRECISION")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_infimum_round_trips_through_csv() {
    let o = hypstable(&["eval", "infimum", "--alpha", "1", "--dim", "3", "--grid", "0.5:2:4"]);
    assert_eq!(o.status.code(), Some(0));
    let t = Table::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(t.columns, vec!["z", "value"]);
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.to_csv().unwrap(), stdout(&o));
    assert!((t.rows[0][1] - 0.462_706_457_376_471_1).abs() < 1e-12);
}

#[test]
fn eval_output_is_byte_identical_across_runs() {
    let args = ["eval", "overshoot", "--alpha", "1.5", "--dim", "2", "--level", "0.5", "--grid", "0.1:3:25"];
    assert_eq!(hypstable(&args).stdout, hypstable(&args).stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "alpha=1\ndim=3\nlevel=0.5\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = hypstable(&["--config", cfg, "eval", "overshoot", "--grid", "0.1:1:3"]);
    let explicit = hypstable(&["eval", "overshoot", "--alpha", "1", "--dim", "3", "--level", "0.5", "--grid", "0.1:1:3"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, explicit.stdout);
    let overridden = hypstable(&["--config", cfg, "eval", "overshoot", "--alpha", "1.5", "--grid", "0.1:1:3"]);
    assert_ne!(overridden.stdout, explicit.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levy.json");
    let o = hypstable(&[
        "eval", "levy-density", "--alpha", "1", "--dim", "3", "--grid", "0.7:0.7:1", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let pi = v["rows"][0][1].as_f64().unwrap();
    assert!((pi - 1.113_907_810_969_695_9).abs() < 1e-12);
}

#[test]
fn precision_environment_variable_is_accepted() {
    let base = ["eval", "infimum", "--alpha", "1", "--dim", "3", "--grid", "1:1:1"];
    let o = Command::new(env!("CARGO_BIN_EXE_hypstable")).args(base).env("HYPSTABLE_PRECISION", "1e-6").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_hypstable")).args(base).env("HYPSTABLE_PRECISION", "nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn hitting_outside_its_regime_exits_two() {
    let o = hypstable(&["eval", "hitting", "--alpha", "0.5", "--dim", "3", "--grid", "0.1:1:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("requires"));
}

#[test]
fn bad_parameters_exit_two() {
    assert_eq!(hypstable(&["eval", "infimum", "--alpha", "2.5", "--dim", "3", "--grid", "1:2:2"]).status.code(), Some(2));
    assert_eq!(hypstable(&["eval", "infimum", "--alpha", "1", "--dim", "3", "--grid", "bogus"]).status.code(), Some(2));
    assert_eq!(hypstable(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn multi_point_hitting_table() {
    let o = hypstable(&["eval", "hitting", "--alpha", "1.5", "--dim", "3", "--points", "1,2", "--start", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let t = Table::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(t.columns, vec!["point", "first_hit_prob", "prob_any"]);
    assert!((t.rows[0][1] - 0.260_603_212_686_073_16).abs() < 1e-10);
    assert!((t.rows[1][2] - 0.845_643_028_517_804_9).abs() < 1e-10);
}

#[test]
fn simulate_is_reproducible_for_a_seed() {
    let args = ["simulate", "--alpha", "1", "--dim", "3", "--paths", "50", "--dt", "1e-3", "--seed", "11", "--mode", "overshoot", "--level", "0.5"];
    let a = hypstable(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, hypstable(&args).stdout);
    let t = Table::parse_csv(&stdout(&a)).unwrap();
    assert_eq!(t.columns, vec!["sample"]);
    let samples = t.rows.len();
    assert!(samples > 0 && samples <= 50);
}

#[test]
fn verify_requires_a_seed_for_monte_carlo() {
    assert_eq!(hypstable(&["verify", "montecarlo", "--quick"]).status.code(), Some(2));
}

#[test]
fn verify_wiener_hopf_report_passes() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("psi.csv");
    let o = hypstable(&["verify", "wiener-hopf", "--format", "json", "--table", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert!(!v["checks"].as_array().unwrap().is_empty());
    assert!(Table::parse_csv(&fs::read_to_string(table).unwrap()).is_ok());
}
