use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::qmat::{CMatrix, C64};

/// Rank-1 projective measurement on a qubit,
/// `|θ₁⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩`, `|θ₂⟩ = e^{-iφ} sin θ|0⟩ - cos θ|1⟩`.
///
/// `θ ∈ [0, π]` double-covers the Bloch sphere (polar angle `2θ`); the
/// redundancy is kept so angles read the same as the usual parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        MeasurementBasis { theta, phi }
    }

    pub fn computational() -> Self {
        MeasurementBasis::new(0.0, 0.0)
    }

    /// Same projectors with `θ` wrapped into `[0, π)` and `φ` into `[0, 2π)`.
    pub fn canonical(self) -> Self {
        MeasurementBasis {
            theta: self.theta.rem_euclid(PI),
            phi: self.phi.rem_euclid(2.0 * PI),
        }
    }

    /// `[|θ₁⟩, |θ₂⟩]` as amplitude pairs.
    pub fn kets(&self) -> [[C64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        [
            [C64::new(c, 0.0), e * s],
            [e.conj() * s, C64::new(-c, 0.0)],
        ]
    }

    /// `[Π₁, Π₂]`.
    pub fn projectors(&self) -> [CMatrix; 2] {
        self.kets().map(|k| {
            let mut m = CMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = k[i] * k[j].conj();
                }
            }
            m
        })
    }

    /// Bloch vector of `|θ₁⟩`; `|θ₂⟩` sits at its antipode.
    #[inline]
    pub fn bloch(&self) -> [f64; 3] {
        let (s2, c2) = (2.0 * self.theta).sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [s2 * cp, s2 * sp, c2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn projectors_resolve_identity(theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
            let [p1, p2] = MeasurementBasis::new(theta, phi).projectors();
            let sum = p1.add(&p2).unwrap();
            prop_assert!(sum.max_abs_diff(&CMatrix::identity(2)) < 1e-12);
            let cross = p1.matmul(&p2).unwrap();
            prop_assert!(cross.max_abs_diff(&CMatrix::zeros(2, 2)) < 1e-12);
        }

        #[test]
        fn bloch_vector_matches_projector(theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
            let b = MeasurementBasis::new(theta, phi);
            let [p1, _] = b.projectors();
            let n = b.bloch();
            // Π₁ = (I + n·σ)/2
            let [_, sx, sy, sz] = crate::qmat::pauli::all();
            let expect = CMatrix::identity(2)
                .add(&sx.scale_real(n[0])).unwrap()
                .add(&sy.scale_real(n[1])).unwrap()
                .add(&sz.scale_real(n[2])).unwrap()
                .scale_real(0.5);
            prop_assert!(p1.max_abs_diff(&expect) < 1e-12);
        }

        #[test]
        fn canonical_keeps_projectors(theta in -10.0..10.0f64, phi in -20.0..20.0f64) {
            let b = MeasurementBasis::new(theta, phi);
            let c = b.canonical();
            prop_assert!((0.0..PI).contains(&c.theta) && (0.0..2.0 * PI).contains(&c.phi));
            let [p, _] = b.projectors();
            let [pc, _] = c.projectors();
            prop_assert!(p.max_abs_diff(&pc) < 1e-10);
        }
    }
}
