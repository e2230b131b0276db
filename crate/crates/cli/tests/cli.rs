use std::path::Path;
use std::process::{Command, Output};

use corrflow::scenarios::CorrelationRecord;
use corrflow_cli::output::record_fields;

const HEADER: &str = "scenario,a,p,bipartition,total,classical_K,quantum_Q,discord_D,classical_C,concurrence,theta_a,phi_a,theta_b,phi_b,oracle_max_abs_dev";

fn corrflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrflow")).args(args).output().unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn full_default_sweep_has_one_row_per_point_and_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = corrflow(&["--scenario", "ape", "--a", "0.4", "--p-steps", "101", "--bipartitions", "all", "--grid", "8", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    assert_eq!(lines.count(), 606);
    assert!(!text.contains('\r'));
    let meta: serde_json::Value = serde_json::from_str(&read(&dir.path().join("r.meta.json"))).unwrap();
    assert_eq!(meta["rows"], 606);
    assert_eq!(meta["config"]["optimizer"]["grid_points_per_angle"], 8);
    assert_eq!(meta["config"]["measured_side"], "B");
}

#[test]
fn bell_state_transfers_to_b_and_its_environment() {
    let o = corrflow(&["--scenario", "abe", "--a", "1", "--p-steps", "2", "--bipartitions", "BEA"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2], "1.000000000000");
    assert_eq!(rows[1][9], "1.000000000000");
}

#[test]
fn ppe_events_show_a_single_death_without_revival() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ppe.csv");
    let o = corrflow(&["--scenario", "ppe", "--a", "0.4", "--bipartitions", "AB", "--events", "--grid", "12", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let events = read(&dir.path().join("ppe.events.csv"));
    let conc: Vec<&str> = events.lines().filter(|l| l.contains(",concurrence,")).collect();
    assert_eq!(conc.len(), 1, "{events}");
    assert!(conc[0].contains("sudden_death"));
}

#[test]
fn json_round_trips_to_the_csv_fields() {
    let dir = tempfile::tempdir().unwrap();
    let csv_out = dir.path().join("r.csv");
    let json_out = dir.path().join("r.json");
    let common = ["--scenario", "abe", "--a", "0.7", "--p-steps", "6", "--grid", "8", "--oracle-check"];
    let mut a = common.to_vec();
    a.extend(["--out", csv_out.to_str().unwrap()]);
    assert!(corrflow(&a).status.success());
    let mut b = common.to_vec();
    b.extend(["--format", "json", "--out", json_out.to_str().unwrap()]);
    assert!(corrflow(&b).status.success());

    let records: Vec<CorrelationRecord> = serde_json::from_str(&read(&json_out)).unwrap();
    let csv_text = read(&csv_out);
    let csv_rows: Vec<&str> = csv_text.lines().skip(1).collect();
    assert_eq!(records.len(), csv_rows.len());
    for (r, line) in records.iter().zip(csv_rows) {
        assert_eq!(record_fields(r).join(","), line);
    }
    assert!(dir.path().join("r.discrepancies.csv").exists());
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = corrflow(&["--scenario", "ape", "--a", "1", "--p-steps", "11", "--grid", "10", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("x.csv"), run("y.csv"));
}

#[test]
fn validate_reports_cost() {
    let o = corrflow(&["validate"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("sweep points: 606 (101 x 6)"), "{text}");
    assert!(text.contains("grid-stage evaluations per point: 331776 (24^4)"));
    let o = corrflow(&["validate", "--grid", "48"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("grid-stage evaluations per point: 5308416 (48^4)"));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        vec!["validate", "--scenario", "custom"],
        vec!["--scenario", "ape", "--bipartitions", "AB,AX"],
        vec!["--a", "0"],
        vec!["--p-min", "0.8", "--p-max", "0.2"],
        vec!["--scenario", "bogus"],
        vec!["--events", "--p-steps", "11"],
        vec!["--scenario", "custom", "--channel-a", "ad", "--channel-b", "pf", "--oracle-check"],
    ] {
        let o = corrflow(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unwritable_output_is_a_configuration_error() {
    let o = corrflow(&["--p-steps", "2", "--bipartitions", "AB", "--grid", "4", "--out", "/nonexistent-dir/r.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent-dir/r.csv"));
}

#[test]
fn custom_scenario_runs() {
    let o = corrflow(&["--scenario", "custom", "--channel-a", "pf", "--channel-b", "bpf", "--p-steps", "3", "--bipartitions", "AB", "--grid", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("custom:pf+bpf,"));
}

#[test]
fn audit_subcommand_lists_every_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("audit.csv");
    let o = corrflow(&["audit", "--scenario", "abe", "--p-steps", "11", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().filter(|l| l.contains("INVALID")).count(), 2);
    assert_eq!(read(&out).lines().count(), 1 + 66);
}
