//! Location of entanglement sudden death, revival and sudden changes along a sweep.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::kinds::{Bipartition, ScenarioKind};
use super::sweep::{evaluate_point, point_concurrence, CorrelationRecord, Measure};
use crate::correlations::{OptimizerSettings, Side};
use crate::error::{Error, Result};

/// Fewest points a series needs for second differences to mean anything.
pub const MIN_SERIES_POINTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventSettings {
    /// Concurrence below this counts as separable.
    pub esd_threshold: f64,
    /// Final bracket width after bisection.
    pub refine_width: f64,
    /// A second difference above this multiple of the series median is a candidate kink.
    pub sudden_change_factor: f64,
    /// ...and it must also exceed this absolute size, so flat series stay quiet.
    pub sudden_change_floor: f64,
    pub optimizer: OptimizerSettings,
    pub measured_side: Side,
}

impl Default for EventSettings {
    fn default() -> Self {
        EventSettings {
            esd_threshold: 1e-6,
            refine_width: 1e-4,
            sudden_change_factor: 10.0,
            sudden_change_floor: 1e-6,
            optimizer: OptimizerSettings::default(),
            measured_side: Side::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// Concurrence drops to zero and stays there for more than the last grid point.
    SuddenDeath,
    /// Concurrence becomes nonzero again after a sudden death.
    Revival,
    /// Concurrence becomes nonzero without a preceding death in the series.
    Birth,
    /// A kink in a correlation measure.
    SuddenChange,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::SuddenDeath => "sudden_death",
            EventKind::Revival => "revival",
            EventKind::Birth => "birth",
            EventKind::SuddenChange => "sudden_change",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An event, located within `[p_lo, p_hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub scenario: ScenarioKind,
    pub a: f64,
    pub bipartition: Bipartition,
    pub measure: Measure,
    pub kind: EventKind,
    pub p_lo: f64,
    pub p_hi: f64,
}

struct Series {
    scenario: ScenarioKind,
    a: f64,
    pair: Bipartition,
    p: Vec<f64>,
    h: f64,
}

fn check_series(records: &[CorrelationRecord]) -> Result<Series> {
    if records.len() < MIN_SERIES_POINTS {
        return Err(Error::config(format!(
            "event detection needs at least {MIN_SERIES_POINTS} points, got {}",
            records.len()
        )));
    }
    let first = &records[0];
    if records
        .iter()
        .any(|r| r.scenario != first.scenario || r.a != first.a || r.bipartition != first.bipartition)
    {
        return Err(Error::config(
            "event detection needs records from a single (scenario, a, bipartition) series",
        ));
    }
    let p: Vec<f64> = records.iter().map(|r| r.p).collect();
    let h = (p[p.len() - 1] - p[0]) / (p.len() - 1) as f64;
    if !(h > 0.0) || p.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(Error::config("event detection needs a strictly increasing uniform p grid"));
    }
    Ok(Series {
        scenario: first.scenario,
        a: first.a,
        pair: first.bipartition,
        p,
        h,
    })
}

/// Finds events of `measure` in one series.
///
/// Concurrence yields sudden deaths, revivals and births; every other
/// measure yields sudden changes. Brackets are refined by re-evaluating the
/// dynamics, not by interpolating the records.
pub fn detect_events(records: &[CorrelationRecord], measure: Measure, settings: &EventSettings) -> Result<Vec<Event>> {
    let series = check_series(records)?;
    settings.optimizer.validate()?;
    if !(settings.refine_width > 0.0) {
        return Err(Error::config("refine_width must be positive"));
    }
    let values: Vec<f64> = records.iter().map(|r| r.value(measure)).collect();
    let found = if measure == Measure::Concurrence {
        entanglement_events(&series, &values, settings)?
    } else {
        sudden_changes(&series, &values, measure, settings)?
    };
    Ok(found
        .into_iter()
        .map(|(kind, p_lo, p_hi)| Event {
            scenario: series.scenario,
            a: series.a,
            bipartition: series.pair,
            measure,
            kind,
            p_lo,
            p_hi,
        })
        .collect())
}

/// Splits a whole sweep by bipartition and runs every measure through `detect_events`.
pub fn detect_sweep_events(records: &[CorrelationRecord], settings: &EventSettings) -> Result<Vec<Event>> {
    let mut pairs: Vec<Bipartition> = Vec::new();
    for r in records {
        if !pairs.contains(&r.bipartition) {
            pairs.push(r.bipartition);
        }
    }
    let mut out = Vec::new();
    for pair in pairs {
        let series: Vec<CorrelationRecord> = records.iter().filter(|r| r.bipartition == pair).cloned().collect();
        for measure in Measure::ALL {
            out.extend(detect_events(&series, measure, settings).map_err(|e| e.context(format!("bipartition {pair}")))?);
        }
    }
    Ok(out)
}

fn entanglement_events(s: &Series, c: &[f64], settings: &EventSettings) -> Result<Vec<(EventKind, f64, f64)>> {
    let alive_at = |p: f64| -> Result<bool> {
        Ok(point_concurrence(s.scenario, s.a, s.pair, p)? >= settings.esd_threshold)
    };
    let alive: Vec<bool> = c.iter().map(|&v| v >= settings.esd_threshold).collect();
    let n = alive.len();
    let mut died = false;
    let mut out = Vec::new();
    for i in 0..n - 1 {
        if alive[i] == alive[i + 1] {
            continue;
        }
        let (lo, hi) = bisect_boundary(s.p[i], s.p[i + 1], alive[i], settings.refine_width, &alive_at)?;
        if alive[i] {
            // Reaching zero only at the end of the sweep is asymptotic decay.
            if i + 1 < n - 1 {
                died = true;
                out.push((EventKind::SuddenDeath, lo, hi));
            }
        } else {
            let kind = if died { EventKind::Revival } else { EventKind::Birth };
            out.push((kind, lo, hi));
        }
    }
    Ok(out)
}

fn bisect_boundary(
    mut lo: f64,
    mut hi: f64,
    state_lo: bool,
    width: f64,
    state_at: &dyn Fn(f64) -> Result<bool>,
) -> Result<(f64, f64)> {
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if state_at(mid)? == state_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn sudden_changes(
    s: &Series,
    f: &[f64],
    measure: Measure,
    settings: &EventSettings,
) -> Result<Vec<(EventKind, f64, f64)>> {
    let n = f.len();
    let d2: Vec<f64> = (1..n - 1).map(|i| (f[i + 1] - 2.0 * f[i] + f[i - 1]).abs()).collect();
    let threshold = (settings.sudden_change_factor * median(&mut d2.clone())).max(settings.sudden_change_floor);
    let flagged: Vec<usize> = (1..n - 1).filter(|&i| d2[i - 1] > threshold).collect();

    // Merge neighbouring flagged points into one candidate bracket.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for i in flagged {
        match runs.last_mut() {
            Some((_, last)) if i <= *last + 2 => *last = i,
            _ => runs.push((i, i)),
        }
    }

    let eval = |p: f64| -> Result<f64> {
        let r = evaluate_point(s.scenario, s.a, s.pair, p, &settings.optimizer, settings.measured_side)?;
        Ok(measure.of(&r))
    };
    let mut out = Vec::new();
    for (first, last) in runs {
        // Brackets reaching a sweep end pick up boundary singularities such
        // as p log p, which are not sudden changes.
        if first == 1 || last == n - 2 {
            continue;
        }
        let (il, ih) = (first - 1, last + 1);
        let biggest = d2[first - 1..last].iter().cloned().fold(0.0, f64::max);
        let left_slope = (f[il] - f[il - 1]) / s.h;
        let right_slope = (f[ih + 1] - f[ih]) / s.h;
        let kink = locate_kink(
            &eval,
            Branch { p: s.p[il], f: f[il], slope: left_slope },
            Branch { p: s.p[ih], f: f[ih], slope: right_slope },
            settings.refine_width,
        )?;
        // A genuine kink keeps its slope jump as the bracket shrinks; smooth curvature does not.
        if kink.jump.abs() * s.h >= 0.25 * biggest {
            out.push((EventKind::SuddenChange, kink.lo, kink.hi));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy)]
struct Branch {
    p: f64,
    f: f64,
    slope: f64,
}

struct Kink {
    lo: f64,
    hi: f64,
    jump: f64,
}

/// Shrinks `[left.p, right.p]` around a derivative discontinuity.
///
/// Each midpoint is assigned to whichever side's linear extrapolation
/// predicts it better, and that side's slope is re-estimated locally.
fn locate_kink(eval: &dyn Fn(f64) -> Result<f64>, mut left: Branch, mut right: Branch, width: f64) -> Result<Kink> {
    while right.p - left.p > width {
        let mid = 0.5 * (left.p + right.p);
        let fm = eval(mid)?;
        let err_left = (fm - (left.f + left.slope * (mid - left.p))).abs();
        let err_right = (fm - (right.f - right.slope * (right.p - mid))).abs();
        if err_left <= err_right {
            let d = 0.5 * (mid - left.p);
            let slope = (fm - eval(mid - d)?) / d;
            left = Branch { p: mid, f: fm, slope };
        } else {
            let d = 0.5 * (right.p - mid);
            let slope = (eval(mid + d)? - fm) / d;
            right = Branch { p: mid, f: fm, slope };
        }
    }
    Ok(Kink {
        lo: left.p,
        hi: right.p,
        jump: right.slope - left.slope,
    })
}
