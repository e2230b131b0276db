//! Dense complex matrix kernel.

mod cmatrix;
mod density;
mod eigen;
mod entropy;
mod layout;

pub use cmatrix::{pauli, tensor, CMatrix, C64};
pub use density::{DensityMatrix, ValidityReport};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, hermitian_eigenvalues_2x2};
pub use entropy::{binary_entropy, shannon_entropy, von_neumann_entropy, xlog2x};
pub use layout::{partial_trace, Label, QubitLayout};

/// Numerical thresholds used throughout the crate.
pub mod tol {
    /// Maximum entry of `|M - M†|` accepted for a density matrix.
    pub const HERMITIAN: f64 = 1e-12;
    /// Maximum `|Tr M - 1|` accepted for a density matrix.
    pub const TRACE: f64 = 1e-12;
    /// Most negative eigenvalue accepted for a density matrix.
    pub const PSD: f64 = -1e-10;
    /// Hermiticity required of eigensolver input.
    pub const EIGEN_HERMITIAN: f64 = 1e-10;
    /// Eigenvalues and probabilities below this contribute nothing to entropies.
    pub const ENTROPY_CUTOFF: f64 = 1e-14;
    /// Allowed deviation of a probability vector's sum from 1.
    pub const PROBABILITY_SUM: f64 = 1e-9;
    /// Most negative entry accepted in a probability vector.
    pub const PROBABILITY_DUST: f64 = -1e-12;
}
