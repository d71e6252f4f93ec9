use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dtqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtqw")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dtqw(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn invariant_comparison_predicts_two_edge_states() {
    let v = json(&["invariant", "--theta1", "0.5", "--theta2", "-0.5"]);
    assert_eq!(v["rel_homotopic"], false);
    assert_eq!(v["predicted_edge_states"], 2);
    let v = json(&["invariant", "--theta1", "0.3927", "--theta2", "2.7489"]);
    assert_eq!(v["rel_homotopic"], true);
    assert_eq!(v["predicted_edge_states"], 0);
}

#[test]
fn invariant_json_keys_in_order() {
    let text = stdout(&["invariant", "--theta", "0.7"]);
    let keys: Vec<usize> =
        ["winding_mt", "pole_k0", "pole_k1", "phase_label"].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn band_csv_layout() {
    let text = stdout(&["band", "--theta", "45", "--degrees", "--grid", "16"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,omega_plus,omega_minus,n_x,n_y,n_z");
    assert_eq!(lines.count(), 16);
}

#[test]
fn gapless_band_leaves_vectors_empty() {
    let text = stdout(&["band", "--theta", "0", "--grid", "8"]);
    assert!(text.lines().skip(1).any(|l| l.ends_with(",,,")));
}

#[test]
fn map_all_frames_tags_rows() {
    let text = stdout(&["map", "--frame", "all", "--grid", "8"]);
    assert_eq!(text.lines().next().unwrap(), "k,n_x,n_y,n_z,frame");
    for tag in ["identity", "v1", "v2"] {
        assert_eq!(text.lines().filter(|l| l.ends_with(tag)).count(), 8);
    }
}

#[test]
fn winding_report() {
    let v = json(&["winding", "--theta", "0.6"]);
    assert_eq!(v["v1_about_x"], -1);
    assert_eq!(v["winding_mt_upper"], v["winding_mt_lower"]);
}

#[test]
fn symmetry_reports_pass() {
    let v = json(&["symmetry", "--theta", "0.8", "--ring-size", "8", "--seed", "3"]);
    let reports = v.as_array().unwrap();
    assert!(reports.iter().any(|r| r["name"] == "PHS"));
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn edge_and_evolve_records() {
    let v = json(&["edge", "--beta", "1.5707963267948966", "--eta", "pi", "--format", "json"]);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    let v = json(&["evolve", "--case", "both", "--steps", "60", "--format", "json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["oscillating"], true);
}

#[test]
fn sweep_rows_are_ordered() {
    let text = stdout(&["sweep", "--theta-min", "-3", "--theta-max", "3", "--count", "7", "--grid", "64"]);
    let thetas: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(thetas, vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
    let zero = text.lines().nth(4).unwrap();
    assert!(zero.ends_with(",,,,"));
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        vec!["symmetry", "--ring-size", "7"],
        vec!["band", "--grid", "4"],
        vec!["invariant", "--theta1", "0.5"],
        vec!["invariant", "--format", "csv"],
        vec!["edge", "--theta1", "0.5", "--theta2", "0.7"],
        vec!["evolve", "--steps", "200", "--ring-size", "64"],
        vec!["invariant", "--theta", "0"],
        vec!["band", "--format", "xml"],
    ] {
        assert_eq!(dtqw(&args).status.code(), Some(2), "{args:?}");
    }
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    let out = dtqw(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    fs::read_to_string(&path).unwrap()
}

#[test]
fn file_output_with_sidecar_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["symmetry", "--theta", "0.4", "--ring-size", "8", "--seed", "11"];
    let a = run_to(dir.path(), "a.json", &args);
    let b = run_to(dir.path(), "b.json", &args);
    assert_eq!(a, b);
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a.json.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config"]["command"]["subcommand"], "symmetry");
    assert_eq!(meta["config"]["command"]["seed"], 11);
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn companion_json_files() {
    let dir = tempfile::tempdir().unwrap();
    run_to(dir.path(), "edge.csv", &["edge", "--beta", "1.5707963267948966"]);
    assert!(dir.path().join("edge.residual.json").exists());
    let traj = run_to(dir.path(), "traj.csv", &["evolve", "--case", "one", "--steps", "40"]);
    assert!(traj.starts_with("t,interface_prob,mean_x,sigma_x\n"));
    assert_eq!(traj.lines().count(), 42);
    assert!(dir.path().join("traj.experiment.json").exists());
    assert!(dir.path().join("traj.csv.meta.json").exists());
}

#[test]
fn no_partial_output_on_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let out = dtqw(&["symmetry", "--ring-size", "9", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}
