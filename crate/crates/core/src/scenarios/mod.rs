//! Environment combinations, initial states, parameter sweeps, printed
//! analytic cross-checks and dynamical event detection.

mod analytic;
mod events;
mod kinds;
mod sweep;

pub use analytic::{analytic_reduced, audit, ORACLE_TOLERANCE, summarize_audit, AnalyticMatrix, AuditSummary, DiscrepancyRow};
pub use events::{detect_events, detect_sweep_events, MIN_SERIES_POINTS, Event, EventKind, EventSettings};
pub use kinds::{initial_state, Bipartition, InitialStateParams, ScenarioKind};
pub use sweep::{evaluate_point, point_concurrence, sweep, uniform_grid, CorrelationRecord, Measure, ScenarioConfig};
