use super::basis::MeasurementBasis;
use crate::error::{Error, Result};
use crate::qmat::{binary_entropy, pauli, tensor, xlog2x, CMatrix, DensityMatrix};

/// `ρ = ¼(I⊗I + r_A·σ⊗I + I⊗r_B·σ + Σ t_kl σ_k⊗σ_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochForm {
    pub r_a: [f64; 3],
    pub r_b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

fn expectation(rho: &CMatrix, op: &CMatrix) -> f64 {
    // Tr(ρ O) without forming the product
    let n = rho.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (rho[(i, j)] * op[(j, i)]).re;
        }
    }
    acc
}

impl BlochForm {
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::config(format!("Bloch form needs a two-qubit state, got dim {}", rho.dim())));
        }
        let m = rho.matrix();
        let s = pauli::all();
        let id = &s[0];
        let mut out = BlochForm {
            r_a: [0.0; 3],
            r_b: [0.0; 3],
            t: [[0.0; 3]; 3],
        };
        for k in 0..3 {
            out.r_a[k] = expectation(m, &tensor(&s[k + 1], id));
            out.r_b[k] = expectation(m, &tensor(id, &s[k + 1]));
            for l in 0..3 {
                out.t[k][l] = expectation(m, &tensor(&s[k + 1], &s[l + 1]));
            }
        }
        Ok(out)
    }

    /// The same state with the two parties exchanged.
    pub fn swapped(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (k, row) in t.iter_mut().enumerate() {
            for (l, x) in row.iter_mut().enumerate() {
                *x = self.t[l][k];
            }
        }
        BlochForm {
            r_a: self.r_b,
            r_b: self.r_a,
            t,
        }
    }

    /// `T n`
    #[inline]
    pub fn t_times(&self, n: &[f64; 3]) -> [f64; 3] {
        [
            dot(&self.t[0], n),
            dot(&self.t[1], n),
            dot(&self.t[2], n),
        ]
    }

    /// Conditional entropy of `A` after measuring `B` in `basis`.
    pub fn conditional_entropy_measuring_b(&self, basis: &MeasurementBasis) -> f64 {
        let n = basis.bloch();
        let tn = self.t_times(&n);
        let rb = dot(&self.r_b, &n);
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            // outcome with Bloch vector sign·n
            let weight = 1.0 + sign * rb;
            let q = 0.5 * weight;
            if q < crate::qmat::tol::ENTROPY_CUTOFF {
                continue;
            }
            let v = [
                (self.r_a[0] + sign * tn[0]) / weight,
                (self.r_a[1] + sign * tn[1]) / weight,
                (self.r_a[2] + sign * tn[2]) / weight,
            ];
            let len = dot(&v, &v).sqrt().min(1.0);
            total += q * binary_entropy(0.5 * (1.0 + len));
        }
        total
    }

    /// Classical mutual information of the joint outcomes of two local measurements.
    #[inline]
    pub fn outcome_mutual_information(&self, basis_a: &MeasurementBasis, basis_b: &MeasurementBasis) -> f64 {
        let na = basis_a.bloch();
        let nb = basis_b.bloch();
        let a = dot(&na, &self.r_a);
        let b = dot(&nb, &self.r_b);
        let c = dot(&na, &self.t_times(&nb));
        outcome_information(a, b, c, marginal_entropy(a), marginal_entropy(b))
    }
}

#[inline]
pub(crate) fn dot(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

/// Entropy of a ±1 outcome with mean `m`.
#[inline]
pub(crate) fn marginal_entropy(m: f64) -> f64 {
    binary_entropy((0.5 * (1.0 + m)).clamp(0.0, 1.0))
}

/// `H(A) + H(B) - H(A,B)` for ±1 outcomes with means `a`, `b` and correlation `c`.
#[inline]
pub(crate) fn outcome_information(a: f64, b: f64, c: f64, h_a: f64, h_b: f64) -> f64 {
    let p00 = 0.25 * (1.0 + a + b + c);
    let p01 = 0.25 * (1.0 + a - b - c);
    let p10 = 0.25 * (1.0 - a + b - c);
    let p11 = 0.25 * (1.0 - a - b + c);
    let h_ab = -(xlog2x(p00.max(0.0)) + xlog2x(p01.max(0.0)) + xlog2x(p10.max(0.0)) + xlog2x(p11.max(0.0)));
    h_a + h_b - h_ab
}
