use nalgebra::SymmetricEigen;

use super::cmatrix::CMatrix;
use super::tol;
use crate::error::{Error, Result};

fn check_hermitian(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::numeric(format!(
            "eigenvalues of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > tol::EIGEN_HERMITIAN {
        return Err(Error::numeric(format!(
            "matrix is not Hermitian (max |M - M†| = {defect:.3e})"
        )));
    }
    Ok(())
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    if m.rows() == 2 {
        let [hi, lo] = hermitian_eigenvalues_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)].norm());
        return Ok(vec![hi, lo]);
    }
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigenvalues (descending) and the matching column eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_hermitian(m)?;
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(m.rows(), m.rows());
    for (col, &src) in order.iter().enumerate() {
        for row in 0..m.rows() {
            vectors[(row, col)] = eig.eigenvectors[(row, src)];
        }
    }
    Ok((values, vectors))
}

/// Closed form for `[[d0, b], [b*, d1]]` given the diagonal and `|b|`.
#[inline]
pub fn hermitian_eigenvalues_2x2(d0: f64, d1: f64, off_abs: f64) -> [f64; 2] {
    let mean = 0.5 * (d0 + d1);
    let half = 0.5 * (d0 - d1);
    let r = half.hypot(off_abs);
    [mean + r, mean - r]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::C64;

    #[test]
    fn maximally_mixed() {
        let v = hermitian_eigenvalues(&CMatrix::identity(4).scale_real(0.25)).unwrap();
        for x in v {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NumericDomain(_))));
        assert!(hermitian_eigenvalues(&CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn closed_form_matches_general_solver() {
        let m = CMatrix::from_rows(&[
            [C64::new(0.7, 0.0), C64::new(0.1, -0.2)],
            [C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
        ]);
        let eig = SymmetricEigen::new(m.to_nalgebra());
        let mut general: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        general.sort_by(|a, b| b.total_cmp(a));
        let closed = hermitian_eigenvalues(&m).unwrap();
        for (a, b) in general.iter().zip(&closed) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvectors_reconstruct() {
        let m = CMatrix::from_rows(&[
            [C64::new(0.5, 0.0), C64::new(0.1, 0.1), C64::new(0.0, 0.0)],
            [C64::new(0.1, -0.1), C64::new(0.3, 0.0), C64::new(0.05, 0.0)],
            [C64::new(0.0, 0.0), C64::new(0.05, 0.0), C64::new(0.2, 0.0)],
        ]);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        let d = CMatrix::diag(&vals);
        let back = vecs.matmul(&d).unwrap().matmul(&vecs.dagger()).unwrap();
        assert!(back.max_abs_diff(&m) < 1e-14);
    }
}
