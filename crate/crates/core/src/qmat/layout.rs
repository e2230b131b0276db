use std::fmt;

use serde::{Deserialize, Serialize};

use super::cmatrix::{CMatrix, C64};
use super::density::DensityMatrix;
use crate::error::{Error, Result};

/// One of the four parties of the composite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    EA,
    EB,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::A => "A",
            Label::B => "B",
            Label::EA => "E_A",
            Label::EB => "E_B",
        })
    }
}

/// Ordered qubit factors of a state; the first factor is the slowest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitLayout {
    labels: Vec<Label>,
}

impl QubitLayout {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::config("layout needs at least one factor"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::config(format!("label {l} appears twice in layout")));
            }
        }
        Ok(QubitLayout { labels })
    }

    /// `A ⊗ B ⊗ E_A ⊗ E_B`.
    pub fn standard() -> Self {
        QubitLayout {
            labels: vec![Label::A, Label::B, Label::EA, Label::EB],
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// Traces out every factor not in `keep`.
///
/// The result is expressed over the kept factors in layout order, with
/// `|0⟩` before `|1⟩` in each factor.
pub fn partial_trace(rho: &DensityMatrix, layout: &QubitLayout, keep: &[Label]) -> Result<DensityMatrix> {
    let n = layout.labels.len();
    if rho.dim() != layout.dim() {
        return Err(Error::config(format!(
            "state of dimension {} does not fit a {}-qubit layout",
            rho.dim(),
            n
        )));
    }
    if keep.is_empty() {
        return Err(Error::config("partial trace must keep at least one factor"));
    }
    let mut kept = Vec::with_capacity(keep.len());
    for &l in keep {
        let pos = layout
            .position(l)
            .ok_or_else(|| Error::config(format!("label {l} is not in the layout")))?;
        if kept.contains(&pos) {
            return Err(Error::config(format!("label {l} requested twice")));
        }
        kept.push(pos);
    }
    kept.sort_unstable();
    let traced: Vec<usize> = (0..n).filter(|p| !kept.contains(p)).collect();

    // bit of factor `pos` in a global index; factor 0 is the most significant
    let place = |pos: usize| n - 1 - pos;
    let scatter = |bits: usize, positions: &[usize]| -> usize {
        positions
            .iter()
            .enumerate()
            .map(|(k, &pos)| ((bits >> (positions.len() - 1 - k)) & 1) << place(pos))
            .sum()
    };

    let out_dim = 1 << kept.len();
    let env_dim = 1 << traced.len();
    let env_offsets: Vec<usize> = (0..env_dim).map(|t| scatter(t, &traced)).collect();
    let m = rho.matrix();
    let mut out = CMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        let gi = scatter(i, &kept);
        for j in 0..out_dim {
            let gj = scatter(j, &kept);
            let mut acc = C64::new(0.0, 0.0);
            for &off in &env_offsets {
                acc += m[(gi | off, gj | off)];
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::new(out)
}
