use serde::{Deserialize, Serialize};

use super::basis::MeasurementBasis;
use super::bloch::{dot, marginal_entropy, outcome_information, BlochForm};
use super::concurrence::concurrence;
use super::optimizer::{nelder_mead, OptimizerSettings};
use super::{clamp_nonnegative, Side};
use crate::error::{Error, Result};
use crate::qmat::{
    hermitian_eigenvalues_2x2, partial_trace, tensor, von_neumann_entropy, xlog2x, CMatrix, DensityMatrix, Label,
    QubitLayout,
};

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::config(format!("expected a two-qubit state (dim 4), got dim {}", rho.dim())))
    }
}

fn pair_layout() -> QubitLayout {
    QubitLayout::new(vec![Label::A, Label::B]).expect("two distinct labels")
}

fn marginal(rho: &DensityMatrix, side: Side) -> Result<DensityMatrix> {
    let keep = match side {
        Side::A => Label::A,
        Side::B => Label::B,
    };
    partial_trace(rho, &pair_layout(), &[keep])
}

struct Entropies {
    a: f64,
    b: f64,
    ab: f64,
}

impl Entropies {
    fn of(rho: &DensityMatrix) -> Result<Self> {
        Ok(Entropies {
            a: von_neumann_entropy(&marginal(rho, Side::A)?),
            b: von_neumann_entropy(&marginal(rho, Side::B)?),
            ab: von_neumann_entropy(rho),
        })
    }

    fn mutual(&self) -> f64 {
        self.a + self.b - self.ab
    }

    fn side(&self, side: Side) -> f64 {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }
}

/// `I_q = S(ρ_A) + S(ρ_B) - S(ρ_AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    clamp_nonnegative(Entropies::of(rho)?.mutual(), "mutual information")
}

/// `Σ_j q_j S(ρ^j)`: entropy left on the unmeasured side after measuring `side` in `basis`.
pub fn measured_conditional_entropy(rho: &DensityMatrix, side: Side, basis: &MeasurementBasis) -> Result<f64> {
    require_two_qubits(rho)?;
    let id = CMatrix::identity(2);
    let m = rho.matrix();
    let mut total = 0.0;
    for proj in basis.projectors() {
        let lifted = match side {
            Side::A => tensor(&proj, &id),
            Side::B => tensor(&id, &proj),
        };
        let post = lifted.matmul(m)?.matmul(&lifted)?;
        // unnormalized state of the unmeasured qubit
        let mut cond = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                cond[(i, j)] = match side {
                    Side::B => post[(2 * i, 2 * j)] + post[(2 * i + 1, 2 * j + 1)],
                    Side::A => post[(i, j)] + post[(2 + i, 2 + j)],
                };
            }
        }
        let q = cond.trace().re;
        if q < crate::qmat::tol::ENTROPY_CUTOFF {
            continue;
        }
        let [l0, l1] = hermitian_eigenvalues_2x2(cond[(0, 0)].re / q, cond[(1, 1)].re / q, cond[(0, 1)].norm() / q);
        total += -q * (xlog2x(l0.clamp(0.0, 1.0)) + xlog2x(l1.clamp(0.0, 1.0)));
    }
    Ok(total)
}

/// Maximizes the one-sided classical information `S(ρ_unmeasured) - S_cond`
/// over bases on `side`. Returns the maximum and its basis.
fn maximize_one_sided(form: &BlochForm, unmeasured_entropy: f64, side: Side, opt: &OptimizerSettings) -> (f64, MeasurementBasis) {
    let form = match side {
        Side::B => form.clone(),
        Side::A => form.swapped(),
    };
    let objective = |theta: f64, phi: f64| {
        unmeasured_entropy - form.conditional_entropy_measuring_b(&MeasurementBasis::new(theta, phi))
    };
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for &theta in &opt.theta_grid() {
        for &phi in &opt.phi_grid() {
            let v = objective(theta, phi);
            if v > best.0 {
                best = (v, theta, phi);
            }
        }
    }
    let refined = nelder_mead(
        |x| -objective(x[0], x[1]),
        &[best.1, best.2],
        &[opt.theta_step(), opt.phi_step()],
        opt.refine_iterations,
        opt.refine_tolerance,
    );
    if -refined.value > best.0 {
        (-refined.value, MeasurementBasis::new(refined.x[0], refined.x[1]).canonical())
    } else {
        (best.0, MeasurementBasis::new(best.1, best.2))
    }
}

/// Quantum discord with projective measurements on `measured_side`:
/// `D = I_q - max_Π [S(ρ_unmeasured) - S_Π(ρ_unmeasured|measured)]`.
pub fn discord_one_sided(
    rho: &DensityMatrix,
    measured_side: Side,
    opt: &OptimizerSettings,
) -> Result<(f64, MeasurementBasis)> {
    require_two_qubits(rho)?;
    opt.validate()?;
    let ent = Entropies::of(rho)?;
    let form = BlochForm::from_density(rho)?;
    let (j, basis) = maximize_one_sided(&form, ent.side(measured_side.other()), measured_side, opt);
    Ok((clamp_nonnegative(ent.mutual() - j, "discord")?, basis))
}

/// One-sided classical correlation `C = I_q - D`.
pub fn classical_one_sided(rho: &DensityMatrix, measured_side: Side, opt: &OptimizerSettings) -> Result<f64> {
    let total = mutual_information(rho)?;
    let (d, _) = discord_one_sided(rho, measured_side, opt)?;
    clamp_nonnegative(total - d, "one-sided classical correlation")
}

/// `p_ij = Tr[(Π_i^A ⊗ Π_j^B) ρ]`, indexed `[i][j]`.
pub fn joint_outcome_distribution(
    rho: &DensityMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<[[f64; 2]; 2]> {
    require_two_qubits(rho)?;
    let pa = basis_a.projectors();
    let pb = basis_b.projectors();
    let mut out = [[0.0; 2]; 2];
    for (i, a) in pa.iter().enumerate() {
        for (j, b) in pb.iter().enumerate() {
            let op = tensor(a, b);
            out[i][j] = op.matmul(rho.matrix())?.trace().re;
        }
    }
    Ok(out)
}

/// Maximizer of the two-sided classical correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedOptimum {
    pub value: f64,
    pub basis_a: MeasurementBasis,
    pub basis_b: MeasurementBasis,
    pub refine_iterations: usize,
}

fn maximize_two_sided(form: &BlochForm, opt: &OptimizerSettings) -> TwoSidedOptimum {
    struct Side1 {
        theta: f64,
        phi: f64,
        vec: [f64; 3],
        mean: f64,
        entropy: f64,
    }
    let mut a_side = Vec::new();
    let mut b_side = Vec::new();
    for &theta in &opt.theta_grid() {
        for &phi in &opt.phi_grid() {
            let basis = MeasurementBasis::new(theta, phi);
            let n = basis.bloch();
            let mean_a = dot(&n, &form.r_a);
            a_side.push(Side1 {
                theta,
                phi,
                vec: n,
                mean: mean_a,
                entropy: marginal_entropy(mean_a),
            });
            let mean_b = dot(&n, &form.r_b);
            b_side.push(Side1 {
                theta,
                phi,
                vec: form.t_times(&n),
                mean: mean_b,
                entropy: marginal_entropy(mean_b),
            });
        }
    }
    // lexicographic scan with strict improvement: ties keep the lowest angle tuple
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    for (ia, a) in a_side.iter().enumerate() {
        for (ib, b) in b_side.iter().enumerate() {
            let c = dot(&a.vec, &b.vec);
            let v = outcome_information(a.mean, b.mean, c, a.entropy, b.entropy);
            if v > best.0 {
                best = (v, ia, ib);
            }
        }
    }
    let (ga, gb) = (&a_side[best.1], &b_side[best.2]);
    let refined = nelder_mead(
        |x| {
            -form.outcome_mutual_information(&MeasurementBasis::new(x[0], x[1]), &MeasurementBasis::new(x[2], x[3]))
        },
        &[ga.theta, ga.phi, gb.theta, gb.phi],
        &[opt.theta_step(), opt.phi_step(), opt.theta_step(), opt.phi_step()],
        opt.refine_iterations,
        opt.refine_tolerance,
    );
    if -refined.value > best.0 {
        TwoSidedOptimum {
            value: -refined.value,
            basis_a: MeasurementBasis::new(refined.x[0], refined.x[1]).canonical(),
            basis_b: MeasurementBasis::new(refined.x[2], refined.x[3]).canonical(),
            refine_iterations: refined.iterations,
        }
    } else {
        TwoSidedOptimum {
            value: best.0,
            basis_a: MeasurementBasis::new(ga.theta, ga.phi),
            basis_b: MeasurementBasis::new(gb.theta, gb.phi),
            refine_iterations: refined.iterations,
        }
    }
}

/// Two-sided classical correlation `K`: the largest classical mutual
/// information of the outcomes of local projective measurements on both sides.
pub fn classical_two_sided(rho: &DensityMatrix, opt: &OptimizerSettings) -> Result<TwoSidedOptimum> {
    require_two_qubits(rho)?;
    opt.validate()?;
    let mut best = maximize_two_sided(&BlochForm::from_density(rho)?, opt);
    best.value = clamp_nonnegative(best.value, "two-sided classical correlation")?;
    Ok(best)
}

/// `Q = I_q - K`.
pub fn quantum_two_sided(rho: &DensityMatrix, opt: &OptimizerSettings) -> Result<f64> {
    let total = mutual_information(rho)?;
    let k = classical_two_sided(rho, opt)?.value;
    clamp_nonnegative(total - k, "two-sided quantum correlation")
}

/// Every measure of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    /// `I_q`
    pub total: f64,
    /// `K`
    pub classical: f64,
    /// `Q = I_q - K`
    pub quantum: f64,
    /// `D` with measurements on `discord_side`
    pub discord_one_sided: f64,
    /// `C = I_q - D`
    pub classical_one_sided: f64,
    pub concurrence: f64,
    pub basis_a: MeasurementBasis,
    pub basis_b: MeasurementBasis,
    pub discord_basis: MeasurementBasis,
    pub discord_side: Side,
}

/// Computes all measures, sharing the entropies and Bloch form between them.
pub fn full_result(rho: &DensityMatrix, opt: &OptimizerSettings, discord_side: Side) -> Result<CorrelationResult> {
    require_two_qubits(rho)?;
    opt.validate()?;
    let ent = Entropies::of(rho)?;
    let total = clamp_nonnegative(ent.mutual(), "mutual information")?;
    let form = BlochForm::from_density(rho)?;

    let two = maximize_two_sided(&form, opt);
    let k = clamp_nonnegative(two.value, "two-sided classical correlation")?;
    // K ≤ I_q; equality overshoot is rounding
    let classical = if k > total {
        clamp_nonnegative(total - k, "two-sided quantum correlation")?;
        total
    } else {
        k
    };

    let (j, discord_basis) = maximize_one_sided(&form, ent.side(discord_side.other()), discord_side, opt);
    let discord = clamp_nonnegative(total - j, "discord")?;
    let discord = discord.min(total);

    Ok(CorrelationResult {
        total,
        classical,
        quantum: total - classical,
        discord_one_sided: discord,
        classical_one_sided: total - discord,
        concurrence: concurrence(rho)?,
        basis_a: two.basis_a,
        basis_b: two.basis_b,
        discord_basis,
        discord_side,
    })
}
