//! Sweeps of the correlation measures over the decoherence parameter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::analytic::analytic_reduced;
use super::kinds::{initial_state, Bipartition, ScenarioKind};
use crate::channels::{evolve, reduced};
use crate::correlations::{concurrence, full_result, CorrelationResult, OptimizerSettings, Side};
use crate::error::{Error, Result};

/// Everything needed to reproduce one sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub a: f64,
    pub p_grid: Vec<f64>,
    pub bipartitions: Vec<Bipartition>,
    pub optimizer: OptimizerSettings,
    /// Compare each numerical reduced state with its printed counterpart.
    pub oracle_check: bool,
    /// Side measured by the one-sided discord and classical correlation.
    pub measured_side: Side,
}

impl ScenarioConfig {
    /// 101 uniform points on `[0, 1]`, all bipartitions, default optimizer.
    pub fn new(scenario: ScenarioKind, a: f64) -> Self {
        ScenarioConfig {
            scenario,
            a,
            p_grid: uniform_grid(0.0, 1.0, 101).expect("default grid is valid"),
            bipartitions: Bipartition::ALL.to_vec(),
            optimizer: OptimizerSettings::default(),
            oracle_check: false,
            measured_side: Side::B,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a <= 1.0) {
            return Err(Error::config(format!("a = {} is outside (0, 1]", self.a)));
        }
        if self.p_grid.is_empty() {
            return Err(Error::config("p grid is empty"));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::config(format!("p = {p} is outside [0, 1]")));
        }
        if self.bipartitions.is_empty() {
            return Err(Error::config("no bipartitions selected"));
        }
        for (i, b) in self.bipartitions.iter().enumerate() {
            if self.bipartitions[..i].contains(b) {
                return Err(Error::config(format!("bipartition {b} listed twice")));
            }
        }
        if self.oracle_check && matches!(self.scenario, ScenarioKind::Custom { .. }) {
            return Err(Error::config("oracle check is only available for ape, abe and ppe"));
        }
        self.optimizer.validate()
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::config(format!("need at least 2 grid points, got {steps}")));
    }
    if !(0.0..=1.0).contains(&min) || !(0.0..=1.0).contains(&max) || min >= max {
        return Err(Error::config(format!("p range [{min}, {max}] must satisfy 0 <= min < max <= 1")));
    }
    let h = (max - min) / (steps - 1) as f64;
    let mut grid: Vec<f64> = (0..steps).map(|i| min + i as f64 * h).collect();
    grid[steps - 1] = max;
    Ok(grid)
}

/// One output row: all measures for one bipartition at one `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub scenario: ScenarioKind,
    pub a: f64,
    pub p: f64,
    pub bipartition: Bipartition,
    pub total: f64,
    #[serde(rename = "classical_K")]
    pub classical_k: f64,
    #[serde(rename = "quantum_Q")]
    pub quantum_q: f64,
    #[serde(rename = "discord_D")]
    pub discord_d: f64,
    #[serde(rename = "classical_C")]
    pub classical_c: f64,
    pub concurrence: f64,
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
    pub oracle_max_abs_dev: Option<f64>,
}

impl CorrelationRecord {
    pub const COLUMNS: [&'static str; 15] = [
        "scenario",
        "a",
        "p",
        "bipartition",
        "total",
        "classical_K",
        "quantum_Q",
        "discord_D",
        "classical_C",
        "concurrence",
        "theta_a",
        "phi_a",
        "theta_b",
        "phi_b",
        "oracle_max_abs_dev",
    ];

    fn from_result(
        scenario: ScenarioKind,
        a: f64,
        p: f64,
        bipartition: Bipartition,
        r: &CorrelationResult,
        oracle_max_abs_dev: Option<f64>,
    ) -> Self {
        CorrelationRecord {
            scenario,
            a,
            p,
            bipartition,
            total: r.total,
            classical_k: r.classical,
            quantum_q: r.quantum,
            discord_d: r.discord_one_sided,
            classical_c: r.classical_one_sided,
            concurrence: r.concurrence,
            theta_a: r.basis_a.theta,
            phi_a: r.basis_a.phi,
            theta_b: r.basis_b.theta,
            phi_b: r.basis_b.phi,
            oracle_max_abs_dev,
        }
    }

    pub fn value(&self, measure: Measure) -> f64 {
        match measure {
            Measure::Total => self.total,
            Measure::ClassicalK => self.classical_k,
            Measure::QuantumQ => self.quantum_q,
            Measure::DiscordD => self.discord_d,
            Measure::ClassicalC => self.classical_c,
            Measure::Concurrence => self.concurrence,
        }
    }
}

/// A column of `CorrelationRecord` that can be tracked along `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Measure {
    Total,
    ClassicalK,
    QuantumQ,
    DiscordD,
    ClassicalC,
    Concurrence,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Total,
        Measure::ClassicalK,
        Measure::QuantumQ,
        Measure::DiscordD,
        Measure::ClassicalC,
        Measure::Concurrence,
    ];

    /// Same spelling as the record column.
    pub fn name(self) -> &'static str {
        match self {
            Measure::Total => "total",
            Measure::ClassicalK => "classical_K",
            Measure::QuantumQ => "quantum_Q",
            Measure::DiscordD => "discord_D",
            Measure::ClassicalC => "classical_C",
            Measure::Concurrence => "concurrence",
        }
    }

    pub fn of(self, r: &CorrelationResult) -> f64 {
        match self {
            Measure::Total => r.total,
            Measure::ClassicalK => r.classical,
            Measure::QuantumQ => r.quantum,
            Measure::DiscordD => r.discord_one_sided,
            Measure::ClassicalC => r.classical_one_sided,
            Measure::Concurrence => r.concurrence,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown measure '{s}'")))
    }
}

impl From<Measure> for String {
    fn from(m: Measure) -> String {
        m.name().to_string()
    }
}

impl TryFrom<String> for Measure {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// All measures for one bipartition at one `p`.
pub fn evaluate_point(
    scenario: ScenarioKind,
    a: f64,
    pair: Bipartition,
    p: f64,
    optimizer: &OptimizerSettings,
    measured_side: Side,
) -> Result<CorrelationResult> {
    let (ka, kb) = scenario.channels();
    let total = evolve(&initial_state(a)?, ka, kb, p)?;
    full_result(&reduced(&total, pair)?, optimizer, measured_side)
}

/// Concurrence alone, skipping the optimizers.
pub fn point_concurrence(scenario: ScenarioKind, a: f64, pair: Bipartition, p: f64) -> Result<f64> {
    let (ka, kb) = scenario.channels();
    let total = evolve(&initial_state(a)?, ka, kb, p)?;
    concurrence(&reduced(&total, pair)?)
}

fn sweep_one_p(config: &ScenarioConfig, rho0: &crate::qmat::DensityMatrix, p: f64) -> Result<Vec<CorrelationRecord>> {
    let (ka, kb) = config.scenario.channels();
    let total = evolve(rho0, ka, kb, p).map_err(|e| e.context(format!("p = {p}")))?;
    config
        .bipartitions
        .iter()
        .map(|&pair| {
            let ctx = |e: Error| e.context(format!("p = {p}, bipartition {pair}"));
            let rho = reduced(&total, pair).map_err(ctx)?;
            let result = full_result(&rho, &config.optimizer, config.measured_side).map_err(ctx)?;
            let oracle = if config.oracle_check {
                analytic_reduced(config.scenario, pair, config.a, p)?.map(|m| m.matrix.max_abs_diff(rho.matrix()))
            } else {
                None
            };
            Ok(CorrelationRecord::from_result(config.scenario, config.a, p, pair, &result, oracle))
        })
        .collect()
}

/// Evaluates every `(p, bipartition)` of the configuration.
///
/// Records come back `p`-major in grid order, bipartitions in the configured
/// order, independent of how the work was scheduled.
pub fn sweep(config: &ScenarioConfig) -> Result<Vec<CorrelationRecord>> {
    config.validate()?;
    let rho0 = initial_state(config.a)?;

    #[cfg(feature = "parallel")]
    let per_p: Vec<Result<Vec<CorrelationRecord>>> = {
        use rayon::prelude::*;
        config.p_grid.par_iter().map(|&p| sweep_one_p(config, &rho0, p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_p: Vec<Result<Vec<CorrelationRecord>>> =
        config.p_grid.iter().map(|&p| sweep_one_p(config, &rho0, p)).collect();

    let mut out = Vec::with_capacity(config.p_grid.len() * config.bipartitions.len());
    for rows in per_p {
        out.extend(rows?);
    }
    Ok(out)
}
