use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::{ChannelKind, FlipKind};
use crate::error::{Error, Result};
use crate::qmat::{pauli, tensor, CMatrix, DensityMatrix, Label};

/// Which pair of environments the two qubits see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ScenarioKind {
    /// Amplitude damping on `A`, phase damping on `B`.
    Ape,
    /// Amplitude damping on `A`, bit flip on `B`.
    Abe,
    /// Phase damping on `A`, phase flip on `B`.
    Ppe,
    /// Any two catalog channels; no printed reference matrices exist.
    Custom { a: ChannelKind, b: ChannelKind },
}

impl ScenarioKind {
    pub fn channels(self) -> (ChannelKind, ChannelKind) {
        match self {
            ScenarioKind::Ape => (ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping),
            ScenarioKind::Abe => (ChannelKind::AmplitudeDamping, ChannelKind::BitFlip(FlipKind::Bit)),
            ScenarioKind::Ppe => (ChannelKind::PhaseDamping, ChannelKind::PhaseFlip),
            ScenarioKind::Custom { a, b } => (a, b),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioKind::Ape => f.write_str("ape"),
            ScenarioKind::Abe => f.write_str("abe"),
            ScenarioKind::Ppe => f.write_str("ppe"),
            ScenarioKind::Custom { a, b } => write!(f, "custom:{a}+{b}"),
        }
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    /// Accepts `ape`, `abe`, `ppe` and `custom:<chan>+<chan>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "ape" => return Ok(ScenarioKind::Ape),
            "abe" => return Ok(ScenarioKind::Abe),
            "ppe" => return Ok(ScenarioKind::Ppe),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix("custom:") {
            if let Some((a, b)) = rest.split_once('+') {
                return Ok(ScenarioKind::Custom {
                    a: a.parse()?,
                    b: b.parse()?,
                });
            }
        }
        Err(Error::config(format!("unknown scenario '{s}' (expected ape, abe, ppe or custom)")))
    }
}

impl From<ScenarioKind> for String {
    fn from(s: ScenarioKind) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for ScenarioKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A pair of parties whose joint reduced state is analysed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Bipartition {
    AB,
    AEA,
    BEB,
    AEB,
    BEA,
    EAEB,
}

impl Bipartition {
    pub const ALL: [Bipartition; 6] = [
        Bipartition::AB,
        Bipartition::AEA,
        Bipartition::BEB,
        Bipartition::AEB,
        Bipartition::BEA,
        Bipartition::EAEB,
    ];

    /// The two parties; the first is the slow index of the reduced matrix.
    pub fn labels(self) -> [Label; 2] {
        match self {
            Bipartition::AB => [Label::A, Label::B],
            Bipartition::AEA => [Label::A, Label::EA],
            Bipartition::BEB => [Label::B, Label::EB],
            Bipartition::AEB => [Label::A, Label::EB],
            Bipartition::BEA => [Label::B, Label::EA],
            Bipartition::EAEB => [Label::EA, Label::EB],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bipartition::AB => "AB",
            Bipartition::AEA => "AEA",
            Bipartition::BEB => "BEB",
            Bipartition::AEB => "AEB",
            Bipartition::BEA => "BEA",
            Bipartition::EAEB => "EAEB",
        }
    }

    /// Parses a comma-separated list, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Bipartition>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Bipartition::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let b: Bipartition = part.parse()?;
            if out.contains(&b) {
                return Err(Error::config(format!("bipartition {b} listed twice")));
            }
            out.push(b);
        }
        if out.is_empty() {
            return Err(Error::config("no bipartitions requested"));
        }
        Ok(out)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    /// Accepts `AEA` as well as `AE_A`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
        Bipartition::ALL
            .into_iter()
            .find(|b| b.name() == norm)
            .ok_or_else(|| Error::config(format!("unknown bipartition '{s}'")))
    }
}

impl From<Bipartition> for String {
    fn from(b: Bipartition) -> String {
        b.name().to_string()
    }
}

impl TryFrom<String> for Bipartition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Coefficients of the initial family `c₀ = 1, c₁ = c₂ = c₃ = -a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateParams {
    a: f64,
}

impl InitialStateParams {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a <= 1.0 {
            Ok(InitialStateParams { a })
        } else {
            Err(Error::config(format!("initial-state parameter a = {a} is outside (0, 1]")))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `[c₀, c₁, c₂, c₃]`.
    pub fn c(&self) -> [f64; 4] {
        [1.0, -self.a, -self.a, -self.a]
    }

    /// `c₀ + c₃`
    pub fn a_plus(&self) -> f64 {
        let c = self.c();
        c[0] + c[3]
    }

    /// `c₀ - c₃`
    pub fn a_minus(&self) -> f64 {
        let c = self.c();
        c[0] - c[3]
    }

    /// `c₁ + c₂`
    pub fn b_plus(&self) -> f64 {
        let c = self.c();
        c[1] + c[2]
    }

    /// `c₁ - c₂`
    pub fn b_minus(&self) -> f64 {
        let c = self.c();
        c[1] - c[2]
    }
}

/// `¼ Σᵢ cᵢ σⁱ ⊗ σⁱ` with `c₁ = c₂ = c₃ = -a`: the Werner family, singlet at `a = 1`.
pub fn initial_state(a: f64) -> Result<DensityMatrix> {
    let params = InitialStateParams::new(a)?;
    let mut m = CMatrix::zeros(4, 4);
    for (c, s) in params.c().into_iter().zip(pauli::all()) {
        m = m.add(&tensor(&s, &s).scale_real(0.25 * c))?;
    }
    DensityMatrix::new(m)
}
