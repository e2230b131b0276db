//! Correlation dynamics of two qubits `A`, `B` locally coupled to two
//! independent, non-identical noisy environments `E_A`, `E_B`.
//!
//! The crate is layered bottom-up:
//!
//! - [`qmat`]: dense complex matrices, density matrices, partial traces and
//!   entropies over the fixed four-qubit layout `A ⊗ B ⊗ E_A ⊗ E_B`.
//! - [`channels`]: the four noise channels as vacuum-environment isometries
//!   and Kraus pairs, and the joint evolution into the 16-dim state.
//! - [`correlations`]: mutual information, one-sided discord, two-sided
//!   classical/quantum correlation and Wootters concurrence on 4×4 states.
//! - [`scenarios`]: the APE/ABE/PPE environment combinations, parameter
//!   sweeps over `p`, the printed analytic reduced matrices used as
//!   cross-checks, and dynamical event detection.

pub mod channels;
pub mod correlations;
pub mod error;
pub mod qmat;
pub mod scenarios;

pub use error::{Error, Result};
