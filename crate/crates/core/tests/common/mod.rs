#![allow(dead_code)]

use corrflow::correlations::{joint_outcome_distribution, MeasurementBasis};
use corrflow::qmat::{hermitian_eigen, shannon_entropy, CMatrix, DensityMatrix, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Ginibre-distributed density matrix of dimension `dim`.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let data: Vec<C64> = (0..dim * dim).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    let g = CMatrix::from_vec(dim, dim, data).unwrap();
    let m = g.matmul(&g.dagger()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

/// Random pure state projector of dimension `dim`.
pub fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let v: Vec<C64> = (0..dim).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = v[i] * v[j].conj() / (norm * norm);
        }
    }
    DensityMatrix::new(m).unwrap()
}

/// Random element of SU(2).
pub fn random_unitary2(rng: &mut ChaCha8Rng) -> CMatrix {
    let v: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = C64::new(v[0] / n, v[1] / n);
    let b = C64::new(v[2] / n, v[3] / n);
    CMatrix::from_rows(&[[a, -b.conj()], [b, a.conj()]])
}

pub fn conjugate(u: &CMatrix, m: &CMatrix) -> CMatrix {
    u.matmul(m).unwrap().matmul(&u.dagger()).unwrap()
}

pub fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m).unwrap();
    let n = m.rows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &l) in vals.iter().enumerate() {
        let s = l.max(0.0).sqrt();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * s;
            }
        }
    }
    out
}

/// Concurrence via the Hermitian route `√(√ρ ρ̃ √ρ)`, independent of the
/// non-Hermitian eigenproblem used by the library.
pub fn concurrence_by_fidelity(rho: &DensityMatrix) -> f64 {
    let yy = corrflow::qmat::tensor(&corrflow::qmat::pauli::y(), &corrflow::qmat::pauli::y());
    let m = rho.matrix();
    let tilde = yy.matmul(&m.conj()).unwrap().matmul(&yy).unwrap();
    let s = sqrt_psd(m);
    let inner = s.matmul(&tilde).unwrap().matmul(&s).unwrap();
    let mut l: Vec<f64> = corrflow::qmat::hermitian_eigenvalues(&inner)
        .unwrap()
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Brute-force `K` on a dense `n⁴` grid straight from projectors.
pub fn dense_grid_k(rho: &DensityMatrix, n: usize) -> f64 {
    let bases: Vec<MeasurementBasis> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| {
                MeasurementBasis::new(
                    i as f64 * std::f64::consts::PI / n as f64,
                    j as f64 * std::f64::consts::TAU / n as f64,
                )
            })
        })
        .collect();
    let mut best = 0.0f64;
    for ba in &bases {
        for bb in &bases {
            let p = joint_outcome_distribution(rho, ba, bb).unwrap();
            let pa = [p[0][0] + p[0][1], p[1][0] + p[1][1]];
            let pb = [p[0][0] + p[1][0], p[0][1] + p[1][1]];
            let flat = [p[0][0], p[0][1], p[1][0], p[1][1]];
            let i = shannon_entropy(&pa).unwrap() + shannon_entropy(&pb).unwrap() - shannon_entropy(&flat).unwrap();
            best = best.max(i);
        }
    }
    best
}
