use serde::Serialize;

use super::cmatrix::CMatrix;
use super::eigen::hermitian_eigenvalues;
use super::tol;
use crate::error::{Error, Result};

/// Outcome of checking a matrix against the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub hermitian_defect: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.hermitian_defect <= tol::HERMITIAN
            && (self.trace - 1.0).abs() <= tol::TRACE
            && self.min_eigenvalue >= tol::PSD
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix of power-of-two size.
///
/// The spectrum is computed once at construction and cached, clamped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.rows().is_power_of_two() || matrix.rows() < 2 {
            return Err(Error::numeric(format!(
                "density matrix must be square with power-of-two size, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITIAN {
            return Err(Error::numeric(format!("not Hermitian: max |M - M†| = {defect:.3e}")));
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::numeric(format!("trace is {trace}, not 1")));
        }
        let raw = hermitian_eigenvalues(&matrix)?;
        let min = raw.last().copied().unwrap_or(0.0);
        if min < tol::PSD {
            return Err(Error::numeric(format!("not positive semidefinite: eigenvalue {min:.3e}")));
        }
        let eigenvalues = raw.into_iter().map(|l| l.clamp(0.0, 1.0)).collect();
        Ok(DensityMatrix { matrix, eigenvalues })
    }

    /// Measures how far an arbitrary matrix is from being a density matrix.
    pub fn check(matrix: &CMatrix) -> ValidityReport {
        let hermitian_defect = matrix.hermiticity_defect();
        let trace = matrix.trace().re;
        let min_eigenvalue = if hermitian_defect <= tol::EIGEN_HERMITIAN {
            hermitian_eigenvalues(matrix)
                .ok()
                .and_then(|v| v.last().copied())
                .unwrap_or(f64::NEG_INFINITY)
        } else {
            f64::NEG_INFINITY
        };
        ValidityReport {
            hermitian_defect,
            trace,
            min_eigenvalue,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of qubit factors.
    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Descending spectrum clamped to `[0, 1]`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn purity(&self) -> f64 {
        self.matrix
            .matmul(&self.matrix)
            .map(|m| m.trace().re)
            .unwrap_or(f64::NAN)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        DensityMatrix::new(CMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }
}
