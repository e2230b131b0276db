//! Correlation measures on two-qubit states.
//!
//! The public operations are defined through explicit projectors and
//! reduced states. The optimizers evaluate the same quantities through the
//! Bloch representation of the state (local Bloch vectors plus the 3×3
//! correlation tensor), which turns every objective evaluation into a few
//! dot products; the two routes are cross-checked in the tests.

mod basis;
mod bloch;
mod concurrence;
mod measures;
mod optimizer;

use serde::{Deserialize, Serialize};

pub use basis::MeasurementBasis;
pub use bloch::BlochForm;
pub use concurrence::concurrence;
pub use measures::{
    classical_one_sided, classical_two_sided, discord_one_sided, full_result, joint_outcome_distribution,
    measured_conditional_entropy, mutual_information, quantum_two_sided, CorrelationResult, TwoSidedOptimum,
};
pub use optimizer::{nelder_mead, OptimizerSettings, SimplexResult};

use crate::error::{Error, Result};

/// Subsystem of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Side {
    A,
    #[default]
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Side::A),
            "b" | "B" => Ok(Side::B),
            _ => Err(Error::config(format!("measured side must be a or b, got '{s}'"))),
        }
    }
}

/// Measures within this distance below zero are reported as zero.
pub const CLAMP_TOLERANCE: f64 = 1e-8;

/// Snaps optimizer noise below zero to zero; anything more negative is a bug.
pub(crate) fn clamp_nonnegative(x: f64, what: &str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -CLAMP_TOLERANCE {
        Ok(0.0)
    } else if x.is_nan() {
        Err(Error::numeric(format!("{what} is NaN")))
    } else {
        Err(Error::numeric(format!("{what} = {x:e} is negative")))
    }
}
