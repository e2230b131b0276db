use nalgebra::{DMatrix, Schur};

use crate::error::{Error, Result};
use crate::qmat::{pauli, tensor, CMatrix, DensityMatrix, C64};

/// Spin-flipped product `R = ρ (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`.
pub(crate) fn spin_flip_product(rho: &CMatrix) -> Result<CMatrix> {
    let yy = tensor(&pauli::y(), &pauli::y());
    rho.matmul(&yy)?.matmul(&rho.conj())?.matmul(&yy)
}

/// Deflation threshold for the Schur iteration. Tighter values stall on
/// near-scalar `R` (product states), looser ones cost accuracy.
const SCHUR_EPS: f64 = 1e-13;

/// Eigenvalues of a general complex matrix from its Schur form, resolving
/// any 2×2 diagonal block left by the solver with the quadratic formula.
fn general_eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let n = m.rows();
    let schur = Schur::try_new(m.to_nalgebra(), SCHUR_EPS, 10_000)
        .ok_or_else(|| Error::numeric("Schur decomposition of R did not converge"))?;
    let (_, t): (DMatrix<C64>, DMatrix<C64>) = schur.unpack();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].norm() > 0.0 {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = (((a - d) * 0.5) * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    Ok(out)
}

/// Wootters concurrence `max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}` with `λᵢ` the
/// eigenvalues of `R` in decreasing order.
///
/// `R` is similar to a positive semidefinite matrix, so its eigenvalues are
/// real and non-negative; rounding residue is dropped before the square roots.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::config(format!("concurrence needs a two-qubit state, got dim {}", rho.dim())));
    }
    let r = spin_flip_product(rho.matrix())?;
    let mut roots: Vec<f64> = general_eigenvalues(&r)?
        .into_iter()
        .map(|l| l.re.max(0.0).sqrt())
        .collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(c.clamp(0.0, 1.0))
}
