use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coarse angle grid followed by Nelder–Mead refinement from the best cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub grid_points_per_angle: usize,
    pub refine_iterations: usize,
    pub refine_tolerance: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            grid_points_per_angle: 24,
            refine_iterations: 200,
            refine_tolerance: 1e-9,
        }
    }
}

impl OptimizerSettings {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_angle < 4 {
            return Err(Error::config(format!(
                "grid_points_per_angle must be at least 4, got {}",
                self.grid_points_per_angle
            )));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(Error::config(format!(
                "refine_tolerance must be positive, got {}",
                self.refine_tolerance
            )));
        }
        Ok(())
    }

    /// `θ` grid on `[0, π)`.
    pub(crate) fn theta_grid(&self) -> Vec<f64> {
        let n = self.grid_points_per_angle;
        (0..n).map(|i| i as f64 * std::f64::consts::PI / n as f64).collect()
    }

    /// `φ` grid on `[0, 2π)`.
    pub(crate) fn phi_grid(&self) -> Vec<f64> {
        let n = self.grid_points_per_angle;
        (0..n).map(|i| i as f64 * std::f64::consts::TAU / n as f64).collect()
    }

    pub(crate) fn theta_step(&self) -> f64 {
        std::f64::consts::PI / self.grid_points_per_angle as f64
    }

    pub(crate) fn phi_step(&self) -> f64 {
        std::f64::consts::TAU / self.grid_points_per_angle as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` with the Nelder–Mead simplex method.
///
/// The initial simplex is `x0` plus one vertex per axis offset by `steps[i]`.
/// Stops when the spread of function values over the simplex falls to
/// `tolerance` or after `max_iterations` iterations. Fully deterministic.
pub fn nelder_mead<F>(f: F, x0: &[f64], steps: &[f64], max_iterations: usize, tolerance: f64) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let along = |from: &[f64], to: &[f64], t: f64| -> Vec<f64> {
        from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        // stable sort keeps earlier vertices first on ties
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread <= tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let reflected = along(&centroid, &worst, -REFLECT);
        let f_reflected = f(&reflected);

        if f_reflected < simplex[0].1 {
            let expanded = along(&centroid, &worst, -EXPAND);
            let f_expanded = f(&expanded);
            simplex[n] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[n - 1].1 {
            simplex[n] = (reflected, f_reflected);
        } else {
            let (candidate, f_candidate) = if f_reflected < simplex[n].1 {
                let c = along(&centroid, &reflected, CONTRACT);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = along(&centroid, &worst, CONTRACT);
                let fc = f(&c);
                (c, fc)
            };
            if f_candidate < simplex[n].1.min(f_reflected) {
                simplex[n] = (candidate, f_candidate);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = along(&best, &vertex.0, SHRINK);
                    let fx = f(&x);
                    *vertex = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexResult {
        x,
        value,
        iterations,
        converged,
    }
}
