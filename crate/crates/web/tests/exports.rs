use corrflow_web::{discord_landscape_json, reduced_matrix_json, sweep_series_json};
use serde_json::Value;

#[test]
fn sweep_series_returns_one_record_per_point() {
    let v: Value = serde_json::from_str(&sweep_series_json("ape", 0.4, "AB", 5, 8).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["bipartition"], "AB");
    assert!((rows[0]["concurrence"].as_f64().unwrap() - 0.1).abs() < 1e-10);
}

#[test]
fn reduced_matrix_reports_printed_mismatch() {
    let v: Value = serde_json::from_str(&reduced_matrix_json("abe", "AB", 0.4, 0.5).unwrap()).unwrap();
    assert_eq!(v["numeric"].as_array().unwrap().len(), 4);
    assert!((v["printed_trace"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert_eq!(v["printed_valid"], false);

    let v: Value = serde_json::from_str(&reduced_matrix_json("custom:pd+pf", "AB", 0.4, 0.5).unwrap()).unwrap();
    assert!(v["printed"].is_null());
}

#[test]
fn landscape_peaks_at_the_werner_value() {
    let v: Value = serde_json::from_str(&discord_landscape_json("ape", "AB", 0.4, 0.0, 12).unwrap()).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 12);
    assert!((v["max"].as_f64().unwrap() - 0.1187091007693073).abs() < 1e-12);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(sweep_series_json("xyz", 0.4, "AB", 5, 8).is_err());
    assert!(reduced_matrix_json("ape", "QQ", 0.4, 0.5).is_err());
    assert!(discord_landscape_json("ape", "AB", 0.4, 0.5, 2).is_err());
}
