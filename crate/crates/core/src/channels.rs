//! The four noise channels as vacuum-environment state maps.
//!
//! Each channel acts on one qubit `S` and its own environment qubit `E`,
//! which starts in `|0⟩`. The state map is stored as a 4×2 isometry `V`
//! whose columns are the images of `|0⟩_S|0⟩_E` and `|1⟩_S|0⟩_E` in the
//! `S ⊗ E` basis `{|00⟩, |01⟩, |10⟩, |11⟩}`. Evolution of the pair of
//! qubits is `ρ ↦ W ρ W†` with `W` the product of the two isometries,
//! reordered into the global `A ⊗ B ⊗ E_A ⊗ E_B` basis. Applying
//! system-only Kraus operators would discard the environment correlations,
//! so the Kraus pairs here are only used as a consistency check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{partial_trace, CMatrix, DensityMatrix, QubitLayout, C64};
use crate::scenarios::Bipartition;

/// Bit flip (`k = 0`) or bit-phase flip (`k = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlipKind {
    Bit,
    BitPhase,
}

impl FlipKind {
    pub fn k(self) -> u8 {
        match self {
            FlipKind::Bit => 0,
            FlipKind::BitPhase => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    BitFlip(FlipKind),
    PhaseFlip,
}

impl ChannelKind {
    pub const CATALOG: [ChannelKind; 5] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::BitFlip(FlipKind::Bit),
        ChannelKind::BitFlip(FlipKind::BitPhase),
        ChannelKind::PhaseFlip,
    ];

    pub fn bit_flip(k: u8) -> Result<Self> {
        match k {
            0 => Ok(ChannelKind::BitFlip(FlipKind::Bit)),
            1 => Ok(ChannelKind::BitFlip(FlipKind::BitPhase)),
            _ => Err(Error::config(format!("flip index k must be 0 or 1, got {k}"))),
        }
    }

    /// Value of `p` at which the channel acts as the identity.
    pub fn identity_point(self) -> f64 {
        match self {
            ChannelKind::AmplitudeDamping | ChannelKind::PhaseDamping => 0.0,
            ChannelKind::BitFlip(_) | ChannelKind::PhaseFlip => 1.0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::BitFlip(FlipKind::Bit) => "bf",
            ChannelKind::BitFlip(FlipKind::BitPhase) => "bpf",
            ChannelKind::PhaseFlip => "pf",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ad" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "pd" | "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "bf" | "bit-flip" => Ok(ChannelKind::BitFlip(FlipKind::Bit)),
            "bpf" | "bit-phase-flip" => Ok(ChannelKind::BitFlip(FlipKind::BitPhase)),
            "pf" | "phase-flip" => Ok(ChannelKind::PhaseFlip),
            other => Err(Error::config(format!(
                "unknown channel '{other}' (expected ad, pd, bf, bpf or pf)"
            ))),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::config(format!("decoherence parameter p = {p} is outside [0, 1]")))
    }
}

/// Norm-preserving embedding of a qubit into qubit ⊗ environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    map: CMatrix,
    p: f64,
    q: f64,
}

impl Isometry {
    /// The 4×2 matrix; row index is `2·s + e`.
    pub fn map(&self) -> &CMatrix {
        &self.map
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `V ρ V†` on system ⊗ environment.
    pub fn dilate(&self, rho: &CMatrix) -> Result<CMatrix> {
        self.map.matmul(rho)?.matmul(&self.map.dagger())
    }

    /// `Tr_E[V ρ V†]`, the channel seen by the system alone.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let big = self.dilate(rho)?;
        let mut out = CMatrix::zeros(2, 2);
        for s in 0..2 {
            for t in 0..2 {
                out[(s, t)] = big[(2 * s, 2 * t)] + big[(2 * s + 1, 2 * t + 1)];
            }
        }
        Ok(out)
    }
}

/// Builds the state map of `kind` at decoherence parameter `p` (`q = 1 - p`).
pub fn isometry_for(kind: ChannelKind, p: f64) -> Result<Isometry> {
    check_p(p)?;
    let q = 1.0 - p;
    let (sp, sq) = (C64::new(p.sqrt(), 0.0), C64::new(q.sqrt(), 0.0));
    let one = C64::new(1.0, 0.0);
    let mut v = CMatrix::zeros(4, 2);
    // indices: |00⟩=0, |01⟩=1, |10⟩=2, |11⟩=3 in (system, environment)
    match kind {
        ChannelKind::AmplitudeDamping => {
            v[(0, 0)] = one;
            v[(2, 1)] = sq;
            v[(1, 1)] = sp;
        }
        ChannelKind::PhaseDamping => {
            v[(0, 0)] = one;
            v[(2, 1)] = sq;
            v[(3, 1)] = sp;
        }
        ChannelKind::BitFlip(flip) => {
            let (up, down) = match flip {
                FlipKind::Bit => (one, one),
                FlipKind::BitPhase => (C64::new(0.0, 1.0), C64::new(0.0, -1.0)),
            };
            v[(0, 0)] = sp;
            v[(3, 0)] = up * sq;
            v[(2, 1)] = sp;
            v[(1, 1)] = down * sq;
        }
        ChannelKind::PhaseFlip => {
            v[(0, 0)] = sp;
            v[(1, 0)] = sq;
            v[(2, 1)] = sp;
            v[(3, 1)] = -sq;
        }
    }
    Ok(Isometry { map: v, p, q })
}

/// Pair of Kraus operators `Γ₁, Γ₂` with `Γ₁†Γ₁ + Γ₂†Γ₂ = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    pub first: CMatrix,
    pub second: CMatrix,
    pub p: f64,
}

impl KrausPair {
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let a = self.first.matmul(rho)?.matmul(&self.first.dagger())?;
        let b = self.second.matmul(rho)?.matmul(&self.second.dagger())?;
        a.add(&b)
    }

    /// `Σ Γ†Γ`, which must be the identity.
    pub fn completeness(&self) -> Result<CMatrix> {
        let a = self.first.dagger().matmul(&self.first)?;
        let b = self.second.dagger().matmul(&self.second)?;
        a.add(&b)
    }
}

/// Kraus operators of `kind`, written out directly rather than read off the isometry.
pub fn kraus_for(kind: ChannelKind, p: f64) -> Result<KrausPair> {
    check_p(p)?;
    let q = 1.0 - p;
    let (sp, sq) = (p.sqrt(), q.sqrt());
    let z = C64::new(0.0, 0.0);
    let (first, second) = match kind {
        ChannelKind::AmplitudeDamping => (
            CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, sq]]),
            CMatrix::from_real_rows(&[[0.0, sp], [0.0, 0.0]]),
        ),
        ChannelKind::PhaseDamping => (
            CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, sq]]),
            CMatrix::from_real_rows(&[[0.0, 0.0], [0.0, sp]]),
        ),
        ChannelKind::BitFlip(FlipKind::Bit) => (
            CMatrix::from_real_rows(&[[sp, 0.0], [0.0, sp]]),
            CMatrix::from_real_rows(&[[0.0, sq], [sq, 0.0]]),
        ),
        ChannelKind::BitFlip(FlipKind::BitPhase) => (
            CMatrix::from_real_rows(&[[sp, 0.0], [0.0, sp]]),
            CMatrix::from_rows(&[[z, C64::new(0.0, -sq)], [C64::new(0.0, sq), z]]),
        ),
        ChannelKind::PhaseFlip => (
            CMatrix::from_real_rows(&[[sp, 0.0], [0.0, sp]]),
            CMatrix::from_real_rows(&[[sq, 0.0], [0.0, -sq]]),
        ),
    };
    Ok(KrausPair { first, second, p })
}

/// Joint evolution with a shared decoherence parameter.
pub fn evolve(rho0: &DensityMatrix, kind_a: ChannelKind, kind_b: ChannelKind, p: f64) -> Result<DensityMatrix> {
    evolve_with(rho0, (kind_a, p), (kind_b, p))
}

/// Joint evolution of `ρ_AB ⊗ |00⟩⟨00|_{E_A E_B}` with independent parameters per qubit.
///
/// Returns the 16-dim state in the `A ⊗ B ⊗ E_A ⊗ E_B` basis.
pub fn evolve_with(
    rho0: &DensityMatrix,
    (kind_a, p_a): (ChannelKind, f64),
    (kind_b, p_b): (ChannelKind, f64),
) -> Result<DensityMatrix> {
    if rho0.dim() != 4 {
        return Err(Error::config(format!(
            "initial state must be two-qubit (dim 4), got dim {}",
            rho0.dim()
        )));
    }
    let va = isometry_for(kind_a, p_a)?;
    let vb = isometry_for(kind_b, p_b)?;
    let mut w = CMatrix::zeros(16, 4);
    for a in 0..2 {
        for ea in 0..2 {
            for b in 0..2 {
                for eb in 0..2 {
                    let row = 8 * a + 4 * b + 2 * ea + eb;
                    for a0 in 0..2 {
                        let x = va.map[(2 * a + ea, a0)];
                        if x.norm_sqr() == 0.0 {
                            continue;
                        }
                        for b0 in 0..2 {
                            w[(row, 2 * a0 + b0)] = x * vb.map[(2 * b + eb, b0)];
                        }
                    }
                }
            }
        }
    }
    let total = w.matmul(rho0.matrix())?.matmul(&w.dagger())?;
    DensityMatrix::new(total)
}

/// Reduced state of a bipartition, first label as the slow index.
pub fn reduced(rho_total: &DensityMatrix, pair: Bipartition) -> Result<DensityMatrix> {
    partial_trace(rho_total, &QubitLayout::standard(), &pair.labels())
}
