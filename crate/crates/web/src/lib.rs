//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain numbers and strings and returns a JSON string,
//! so the page needs no generated type glue beyond `wasm-bindgen`'s.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use corrflow::channels::{evolve, reduced};
use corrflow::correlations::{measured_conditional_entropy, MeasurementBasis, OptimizerSettings, Side};
use corrflow::qmat::{partial_trace, von_neumann_entropy, CMatrix, Label, QubitLayout};
use corrflow::scenarios::{analytic_reduced, initial_state, sweep, uniform_grid, Bipartition, ScenarioConfig, ScenarioKind};
use corrflow::Result;

fn to_js(r: Result<String>) -> std::result::Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

/// `[[[re, im], ...], ...]` row by row.
fn matrix_json(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// All measures for one bipartition along a uniform `p` grid.
pub fn sweep_series_json(scenario: &str, a: f64, pair: &str, p_steps: usize, grid: usize) -> Result<String> {
    let mut cfg = ScenarioConfig::new(scenario.parse()?, a);
    cfg.p_grid = uniform_grid(0.0, 1.0, p_steps)?;
    cfg.bipartitions = vec![pair.parse()?];
    cfg.optimizer = OptimizerSettings {
        grid_points_per_angle: grid,
        ..OptimizerSettings::default()
    };
    Ok(serde_json::to_string(&sweep(&cfg)?).expect("records serialize"))
}

#[derive(Serialize)]
struct ReducedView {
    numeric: Vec<Vec<[f64; 2]>>,
    printed: Option<Vec<Vec<[f64; 2]>>>,
    printed_trace: Option<f64>,
    printed_valid: Option<bool>,
    max_abs_dev: Option<f64>,
}

/// The evolved reduced state next to its printed closed form, if any.
pub fn reduced_matrix_json(scenario: &str, pair: &str, a: f64, p: f64) -> Result<String> {
    let scenario: ScenarioKind = scenario.parse()?;
    let pair: Bipartition = pair.parse()?;
    let (ka, kb) = scenario.channels();
    let rho = reduced(&evolve(&initial_state(a)?, ka, kb, p)?, pair)?;
    let printed = analytic_reduced(scenario, pair, a, p)?;
    let view = ReducedView {
        numeric: matrix_json(rho.matrix()),
        printed_trace: printed.as_ref().map(|m| m.validity.trace),
        printed_valid: printed.as_ref().map(|m| m.validity.is_valid()),
        max_abs_dev: printed.as_ref().map(|m| m.matrix.max_abs_diff(rho.matrix())),
        printed: printed.map(|m| matrix_json(&m.matrix)),
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

#[derive(Serialize)]
struct Landscape {
    n: usize,
    theta: Vec<f64>,
    phi: Vec<f64>,
    /// `values[i][j]` at `(theta[i], phi[j])`
    values: Vec<Vec<f64>>,
    max: f64,
    argmax: [f64; 2],
}

/// One-sided classical information `S(ρ_A) - S(A | Π^B)` over an `n × n`
/// grid of measurement bases on `B`; its maximum sets the discord.
pub fn discord_landscape_json(scenario: &str, pair: &str, a: f64, p: f64, n: usize) -> Result<String> {
    if !(4..=128).contains(&n) {
        return Err(corrflow::Error::config(format!("landscape resolution must be in 4..=128, got {n}")));
    }
    let scenario: ScenarioKind = scenario.parse()?;
    let pair: Bipartition = pair.parse()?;
    let (ka, kb) = scenario.channels();
    let rho = reduced(&evolve(&initial_state(a)?, ka, kb, p)?, pair)?;
    let layout = QubitLayout::new(vec![Label::A, Label::B])?;
    let s_a = von_neumann_entropy(&partial_trace(&rho, &layout, &[Label::A])?);
    let theta: Vec<f64> = (0..n).map(|i| i as f64 * std::f64::consts::PI / n as f64).collect();
    let phi: Vec<f64> = (0..n).map(|j| j as f64 * std::f64::consts::TAU / n as f64).collect();
    let mut values = Vec::with_capacity(n);
    let (mut max, mut argmax) = (f64::NEG_INFINITY, [0.0, 0.0]);
    for &t in &theta {
        let mut row = Vec::with_capacity(n);
        for &f in &phi {
            let v = s_a - measured_conditional_entropy(&rho, Side::B, &MeasurementBasis::new(t, f))?;
            if v > max {
                max = v;
                argmax = [t, f];
            }
            row.push(v);
        }
        values.push(row);
    }
    let view = Landscape { n, theta, phi, values, max, argmax };
    Ok(serde_json::to_string(&view).expect("landscape serializes"))
}

#[wasm_bindgen]
pub fn sweep_series(scenario: &str, a: f64, pair: &str, p_steps: usize, grid: usize) -> std::result::Result<String, JsValue> {
    to_js(sweep_series_json(scenario, a, pair, p_steps, grid))
}

#[wasm_bindgen]
pub fn reduced_matrix(scenario: &str, pair: &str, a: f64, p: f64) -> std::result::Result<String, JsValue> {
    to_js(reduced_matrix_json(scenario, pair, a, p))
}

#[wasm_bindgen]
pub fn discord_landscape(scenario: &str, pair: &str, a: f64, p: f64, n: usize) -> std::result::Result<String, JsValue> {
    to_js(discord_landscape_json(scenario, pair, a, p, n))
}
