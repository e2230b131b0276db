use super::density::DensityMatrix;
use super::tol;
use crate::error::{Error, Result};

/// `x log₂ x` with the `0 log 0 = 0` convention below the entropy cutoff.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x < tol::ENTROPY_CUTOFF {
        0.0
    } else {
        x * x.log2()
    }
}

/// Entropy in bits of the two-outcome distribution `(x, 1 - x)`.
#[inline]
pub fn binary_entropy(x: f64) -> f64 {
    -(xlog2x(x) + xlog2x(1.0 - x))
}

/// Von Neumann entropy `-Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    -rho.eigenvalues().iter().map(|&l| xlog2x(l)).sum::<f64>()
}

/// Shannon entropy in bits.
///
/// Negative dust down to `tol::PROBABILITY_DUST` is clamped and the vector
/// renormalized; larger violations are rejected.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    if let Some(bad) = dist.iter().find(|&&p| !(p >= tol::PROBABILITY_DUST)) {
        return Err(Error::numeric(format!("probability {bad:e} is negative")));
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > tol::PROBABILITY_SUM {
        return Err(Error::numeric(format!("probabilities sum to {sum}, not 1")));
    }
    let clamped: Vec<f64> = dist.iter().map(|&p| p.max(0.0)).collect();
    let norm: f64 = clamped.iter().sum();
    Ok(-clamped.iter().map(|&p| xlog2x(p / norm)).sum::<f64>())
}
