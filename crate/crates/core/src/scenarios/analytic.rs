//! Closed-form reduced matrices as printed for the three scenarios, kept
//! verbatim (including their misprints) so they can be audited against the
//! numerical evolution rather than silently trusted.

use serde::Serialize;

use super::kinds::{initial_state, Bipartition, InitialStateParams, ScenarioKind};
use crate::channels::{evolve, reduced};
use crate::error::{Error, Result};
use crate::qmat::{CMatrix, DensityMatrix, ValidityReport};

/// Element-wise agreement required between a printed matrix and the evolution.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

/// A printed matrix together with its density-matrix validity.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticMatrix {
    pub matrix: CMatrix,
    pub validity: ValidityReport,
}

/// The printed reduced matrix of `pair` for `scenario`, or `None` for custom scenarios.
pub fn analytic_reduced(scenario: ScenarioKind, pair: Bipartition, a: f64, p: f64) -> Result<Option<AnalyticMatrix>> {
    let params = InitialStateParams::new(a)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::config(format!("decoherence parameter p = {p} is outside [0, 1]")));
    }
    let matrix = match scenario {
        ScenarioKind::Ape => ape(pair, &params, p),
        ScenarioKind::Abe => abe(pair, &params, p),
        ScenarioKind::Ppe => ppe(pair, &params, p),
        ScenarioKind::Custom { .. } => return Ok(None),
    };
    let validity = DensityMatrix::check(&matrix);
    Ok(Some(AnalyticMatrix { matrix, validity }))
}

struct Sym {
    p: f64,
    q: f64,
    /// √(pq)
    r: f64,
    ap: f64,
    am: f64,
    bp: f64,
    bm: f64,
    c1: f64,
    c3: f64,
}

impl Sym {
    fn new(params: &InitialStateParams, p: f64) -> Self {
        let q = 1.0 - p;
        let c = params.c();
        Sym {
            p,
            q,
            r: (p * q).sqrt(),
            ap: params.a_plus(),
            am: params.a_minus(),
            bp: params.b_plus(),
            bm: params.b_minus(),
            c1: c[1],
            c3: c[3],
        }
    }
}

fn m4(scale: f64, rows: [[f64; 4]; 4]) -> CMatrix {
    CMatrix::from_real_rows(&rows).scale_real(scale)
}

fn ape(pair: Bipartition, params: &InitialStateParams, p: f64) -> CMatrix {
    let Sym { p, q, r, ap, am, bp, bm, .. } = Sym::new(params, p);
    match pair {
        Bipartition::AB => m4(
            0.25,
            [
                [ap + p * am, 0.0, 0.0, q * bm],
                [0.0, am + p * ap, q * bp, 0.0],
                [0.0, q * bp, q * am, 0.0],
                [q * bm, 0.0, 0.0, q * ap],
            ],
        ),
        Bipartition::AEA => m4(
            0.5,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, p, r, 0.0],
                [0.0, r, q, 0.0],
                [0.0, 0.0, 0.0, 0.0],
            ],
        ),
        Bipartition::BEB => m4(
            0.5,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, q, r],
                [0.0, 0.0, r, p],
            ],
        ),
        Bipartition::AEB => {
            let x = p * ap + am;
            m4(
                0.25,
                [
                    [1.0 + p * q * ap, r * x, 0.0, 0.0],
                    [r * x, p * x, 0.0, 0.0],
                    [0.0, 0.0, q * (q * ap + am), q * r * ap],
                    [0.0, 0.0, q * r * ap, p * q * ap],
                ],
            )
        }
        Bipartition::BEA => m4(
            0.25,
            [
                [ap + q * am, 0.0, 0.0, r * bm],
                [0.0, p * am, r * bp, 0.0],
                [0.0, r * bp, am + q * ap, 0.0],
                [r * bm, 0.0, 0.0, p * ap],
            ],
        ),
        Bipartition::EAEB => {
            let y = am + q * ap;
            m4(
                0.25,
                [
                    [(1.0 + q * q) * ap + 2.0 * q * am, r * y, 0.0, 0.0],
                    [r * y, p * y, 0.0, 0.0],
                    [0.0, 0.0, p * y, p * r * ap],
                    [0.0, 0.0, p * r * ap, p * p * ap],
                ],
            )
        }
    }
}

fn abe(pair: Bipartition, params: &InitialStateParams, p: f64) -> CMatrix {
    let Sym { p, q, r, ap, am, bp, bm, c1, .. } = Sym::new(params, p);
    let (sp, sq) = (p.sqrt(), q.sqrt());
    match pair {
        Bipartition::AB => {
            let u = sq * (p * bm + q * bp);
            let v = sq * (p * bp + q * bm);
            m4(
                0.25,
                [
                    [2.0 * p * p + q * am, 0.0, 0.0, u],
                    [0.0, 2.0 * p * p + q * ap, v, 0.0],
                    [0.0, v, q * (p * am + q * ap), 0.0],
                    [u, 0.0, 0.0, q * (q * am + p * ap)],
                ],
            )
        }
        Bipartition::AEA => m4(
            0.5,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, p, r, 0.0],
                [0.0, r, q, 0.0],
                [0.0, 0.0, 0.0, 0.0],
            ],
        ),
        Bipartition::BEB => m4(
            0.5,
            [
                [p, 0.0, 0.0, r],
                [0.0, q, r, 0.0],
                [0.0, r, p, 0.0],
                [r, 0.0, 0.0, q],
            ],
        ),
        Bipartition::AEB => {
            let w = q * sp * c1;
            m4(
                0.5,
                [
                    [p + p * p, 0.0, 0.0, w],
                    [0.0, (1.0 + p) * q, w, 0.0],
                    [0.0, w, p * q, 0.0],
                    [w, 0.0, 0.0, q * q],
                ],
            )
        }
        Bipartition::BEA => {
            let big_a = q * bm + p * bp;
            let big_b = p * bm + q * bp;
            let big_c = p * am + q * ap;
            let big_d = p * ap + q * am;
            m4(
                0.25,
                [
                    [(1.0 + p) * big_d, 0.0, 0.0, sp * big_b],
                    [0.0, p * big_c, sp * big_a, 0.0],
                    [0.0, sp * big_a, (1.0 + p) * big_c, 0.0],
                    [sp * big_b, 0.0, 0.0, p * big_d],
                ],
            )
        }
        Bipartition::EAEB => {
            let w = p * sq * c1;
            m4(
                0.5,
                [
                    [p * (1.0 + q), 0.0, 0.0, w],
                    [0.0, q * (2.0 - p), w, 0.0],
                    [0.0, w, p * p, 0.0],
                    [w, 0.0, 0.0, p * q],
                ],
            )
        }
    }
}

fn ppe(pair: Bipartition, params: &InitialStateParams, p: f64) -> CMatrix {
    let Sym { p, q, r, ap, am, bp, bm, c3, .. } = Sym::new(params, p);
    let sq = q.sqrt();
    match pair {
        Bipartition::AB => {
            let u = sq * (p - q) * bm;
            let v = sq * (p - q) * bp;
            m4(
                0.25,
                [
                    [ap, 0.0, 0.0, u],
                    [0.0, am, v, 0.0],
                    [0.0, v, am, 0.0],
                    [u, 0.0, 0.0, ap],
                ],
            )
        }
        Bipartition::AEA => m4(
            0.5,
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, q, r],
                [0.0, 0.0, r, p],
            ],
        ),
        Bipartition::BEB => m4(
            0.5,
            [
                [p, r, 0.0, 0.0],
                [r, q, 0.0, 0.0],
                [0.0, 0.0, p, -r],
                [0.0, 0.0, -r, q],
            ],
        ),
        Bipartition::AEB => m4(
            0.5,
            [
                [p, r * c3, 0.0, 0.0],
                [r * c3, q, 0.0, 0.0],
                [0.0, 0.0, p, -r * c3],
                [0.0, 0.0, -r * c3, q],
            ],
        ),
        Bipartition::BEA => m4(
            0.25,
            [
                [ap + q * am, 0.0, r * am, 0.0],
                [0.0, am + q * ap, 0.0, r * ap],
                [r * am, 0.0, p * am, 0.0],
                [0.0, r * ap, 0.0, p * ap],
            ],
        ),
        Bipartition::EAEB => {
            let s = p * r * c3;
            let t = p * q * c3;
            m4(
                0.5,
                [
                    [p * (1.0 + q), -s, p * r, -t],
                    [-s, q * (1.0 + q), -t, q * r],
                    [p * r, -t, p * p, -s],
                    [-t, q * r, -s, p * q],
                ],
            )
        }
    }
}

/// Exchanges the two factors of a 4×4 matrix (`|01⟩ ↔ |10⟩`).
fn swap_factors(m: &CMatrix) -> CMatrix {
    const PERM: [usize; 4] = [0, 2, 1, 3];
    let mut out = CMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = m[(PERM[i], PERM[j])];
        }
    }
    out
}

/// One printed matrix compared against the evolution at one `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub scenario: ScenarioKind,
    pub a: f64,
    pub pair: Bipartition,
    pub p: f64,
    pub max_abs_dev: f64,
    pub trace_of_printed_matrix: f64,
    pub printed_is_valid: bool,
    /// Deviation if the printed matrix is read with its two factors exchanged.
    pub max_abs_dev_swapped: f64,
}

impl DiscrepancyRow {
    pub fn matches(&self) -> bool {
        self.max_abs_dev <= ORACLE_TOLERANCE
    }
}

/// Compares every printed matrix of `scenario` with the evolution on `p_grid`.
pub fn audit(scenario: ScenarioKind, a: f64, p_grid: &[f64]) -> Result<Vec<DiscrepancyRow>> {
    if matches!(scenario, ScenarioKind::Custom { .. }) {
        return Err(Error::config("custom scenarios have no printed reference matrices"));
    }
    let rho0 = initial_state(a)?;
    let (ka, kb) = scenario.channels();
    let mut rows = Vec::with_capacity(p_grid.len() * 6);
    for &p in p_grid {
        let total = evolve(&rho0, ka, kb, p)?;
        for pair in Bipartition::ALL {
            let numeric = reduced(&total, pair)?;
            let printed = analytic_reduced(scenario, pair, a, p)?.expect("built-in scenario");
            rows.push(DiscrepancyRow {
                scenario,
                a,
                pair,
                p,
                max_abs_dev: printed.matrix.max_abs_diff(numeric.matrix()),
                trace_of_printed_matrix: printed.validity.trace,
                printed_is_valid: printed.validity.is_valid(),
                max_abs_dev_swapped: printed.matrix.max_abs_diff(&swap_factors(numeric.matrix())),
            });
        }
    }
    Ok(rows)
}

/// Per-matrix verdict over a whole grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub scenario: ScenarioKind,
    pub pair: Bipartition,
    pub points: usize,
    /// Grid points at which the printed matrix is not a density matrix.
    pub invalid_points: usize,
    /// Grid points at which the printed matrix is valid yet deviates.
    pub valid_mismatch_points: usize,
    pub max_abs_dev: f64,
    pub max_abs_dev_swapped: f64,
    pub min_trace: f64,
    pub max_trace: f64,
}

impl AuditSummary {
    /// The printed matrix fails density-matrix validation somewhere on the grid.
    pub fn flagged_invalid(&self) -> bool {
        self.invalid_points > 0
    }

    /// Every grid point agrees with the evolution to `ORACLE_TOLERANCE`.
    pub fn matches(&self) -> bool {
        self.max_abs_dev <= ORACLE_TOLERANCE
    }
}

/// Groups audit rows by `(scenario, pair)`, preserving first-seen order.
pub fn summarize_audit(rows: &[DiscrepancyRow]) -> Vec<AuditSummary> {
    let mut out: Vec<AuditSummary> = Vec::new();
    for row in rows {
        let idx = match out.iter().position(|s| s.scenario == row.scenario && s.pair == row.pair) {
            Some(i) => i,
            None => {
                out.push(AuditSummary {
                    scenario: row.scenario,
                    pair: row.pair,
                    points: 0,
                    invalid_points: 0,
                    valid_mismatch_points: 0,
                    max_abs_dev: 0.0,
                    max_abs_dev_swapped: 0.0,
                    min_trace: f64::INFINITY,
                    max_trace: f64::NEG_INFINITY,
                });
                out.len() - 1
            }
        };
        let s = &mut out[idx];
        s.points += 1;
        if !row.printed_is_valid {
            s.invalid_points += 1;
        } else if !row.matches() {
            s.valid_mismatch_points += 1;
        }
        s.max_abs_dev = s.max_abs_dev.max(row.max_abs_dev);
        s.max_abs_dev_swapped = s.max_abs_dev_swapped.max(row.max_abs_dev_swapped);
        s.min_trace = s.min_trace.min(row.trace_of_printed_matrix);
        s.max_trace = s.max_trace.max(row.trace_of_printed_matrix);
    }
    out
}
