use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::attacks::ProbeOutcome;
use crate::error::Error;

/// Protocols the simulator knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolId {
    Noh09,
    Scqkd,
    Guoshi,
    Cascade,
    Pingpong,
    Bb84mod,
}

impl ProtocolId {
    pub const ALL: [ProtocolId; 6] = [
        ProtocolId::Noh09,
        ProtocolId::Scqkd,
        ProtocolId::Guoshi,
        ProtocolId::Cascade,
        ProtocolId::Pingpong,
        ProtocolId::Bb84mod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProtocolId::Noh09 => "noh09",
            ProtocolId::Scqkd => "scqkd",
            ProtocolId::Guoshi => "guoshi",
            ProtocolId::Cascade => "cascade",
            ProtocolId::Pingpong => "pingpong",
            ProtocolId::Bb84mod => "bb84mod",
        }
    }
}

impl fmt::Display for ProtocolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown protocol `{s}`")))
    }
}

/// Photon polarization in the H/V basis. Key bits: H ↦ 0, V ↦ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub fn bit(self) -> u8 {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Polarization::H
        } else {
            Polarization::V
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::H => Polarization::V,
            Polarization::V => Polarization::H,
        }
    }

    /// Level index in an optical mode.
    pub fn level(self) -> usize {
        match self {
            Polarization::H => super::optics::H,
            Polarization::V => super::optics::V,
        }
    }

    /// The Noh09 action that reflects this polarization.
    pub fn reflecting_action(self) -> PartyAction {
        match self {
            Polarization::H => PartyAction::RH,
            Polarization::V => PartyAction::RV,
        }
    }
}

/// The four BB84 signal states; H and V double as the Noh09 encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignalState {
    H,
    V,
    Plus,
    Minus,
}

impl SignalState {
    pub const ALL: [SignalState; 4] = [SignalState::H, SignalState::V, SignalState::Plus, SignalState::Minus];

    /// H and + encode 0; V and − encode 1.
    pub fn bit(self) -> u8 {
        match self {
            SignalState::H | SignalState::Plus => 0,
            SignalState::V | SignalState::Minus => 1,
        }
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, SignalState::Plus | SignalState::Minus)
    }

    pub fn orthogonal(self) -> Self {
        match self {
            SignalState::H => SignalState::V,
            SignalState::V => SignalState::H,
            SignalState::Plus => SignalState::Minus,
            SignalState::Minus => SignalState::Plus,
        }
    }

    /// Amplitudes over the optical-mode levels (vac, H, V, absorbed).
    pub fn mode_vector(self) -> [f64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            SignalState::H => [0.0, 1.0, 0.0, 0.0],
            SignalState::V => [0.0, 0.0, 1.0, 0.0],
            SignalState::Plus => [0.0, s, s, 0.0],
            SignalState::Minus => [0.0, s, -s, 0.0],
        }
    }
}

impl From<Polarization> for SignalState {
    fn from(p: Polarization) -> Self {
        match p {
            Polarization::H => SignalState::H,
            Polarization::V => SignalState::V,
        }
    }
}

/// A party's intervention on its interferometer arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartyAction {
    /// Reflect H, block V.
    RH,
    /// Reflect V, block H.
    RV,
    /// Reflect +, block −.
    RPlus,
    /// Reflect −, block +.
    RMinus,
    Block,
    Reflect,
    PauliI,
    PauliZ,
}

impl PartyAction {
    /// The signal state this reflect/block action lets through.
    pub fn reflected(self) -> Option<SignalState> {
        match self {
            PartyAction::RH => Some(SignalState::H),
            PartyAction::RV => Some(SignalState::V),
            PartyAction::RPlus => Some(SignalState::Plus),
            PartyAction::RMinus => Some(SignalState::Minus),
            _ => None,
        }
    }

    pub fn from_reflected(s: SignalState) -> Self {
        match s {
            SignalState::H => PartyAction::RH,
            SignalState::V => PartyAction::RV,
            SignalState::Plus => PartyAction::RPlus,
            SignalState::Minus => PartyAction::RMinus,
        }
    }
}

impl fmt::Display for PartyAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// What clicked in a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DetectorEvent {
    D1,
    D2,
    /// Bob's blocking detector.
    DB,
    /// Alice's absorber in the internal arm (SC-QKD, Guo-Shi).
    DA,
    /// Two photons at Alice's detectors (intercept-resend artifact).
    DoubleAlice,
    /// No monitored detector fired.
    None,
}

impl DetectorEvent {
    pub const ALL: [DetectorEvent; 6] = [
        DetectorEvent::D1,
        DetectorEvent::D2,
        DetectorEvent::DB,
        DetectorEvent::DA,
        DetectorEvent::DoubleAlice,
        DetectorEvent::None,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetectorEvent::D1 => "D1",
            DetectorEvent::D2 => "D2",
            DetectorEvent::DB => "DB",
            DetectorEvent::DA => "DA",
            DetectorEvent::DoubleAlice => "DoubleAlice",
            DetectorEvent::None => "None",
        }
    }
}

/// Eve's per-round record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EveRecord {
    pub outcome: ProbeOutcome,
    /// Binary guess `Z_i` of Alice's bit.
    pub guess: u8,
    /// True when the round was intercepted and resent.
    pub intercepted: bool,
    /// True when Eve flipped the photon's polarization on the onward leg.
    pub flipped: bool,
}

/// One protocol round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub protocol: ProtocolId,
    /// Alice's signal (Noh09, cascade, BB84 variant).
    pub alice_state: Option<SignalState>,
    /// Alice's block/reflect choice (SC-QKD, Guo-Shi).
    pub alice_action: Option<PartyAction>,
    pub bob_action: PartyAction,
    pub event: DetectorEvent,
    pub eve: Option<EveRecord>,
    /// Set exactly when `event == D1`.
    pub sifted: bool,
}

impl RoundRecord {
    /// Alice's secret bit for this round, if the inputs define one.
    pub fn alice_bit(&self) -> Option<u8> {
        match self.protocol {
            ProtocolId::Scqkd => match (self.alice_action?, self.bob_action) {
                (PartyAction::Block, PartyAction::Reflect) => Some(0),
                (PartyAction::Reflect, PartyAction::Block) => Some(1),
                _ => None,
            },
            ProtocolId::Guoshi => match (self.alice_action?, self.bob_action) {
                (PartyAction::Reflect, PartyAction::Block) => Some(0),
                (PartyAction::Block, PartyAction::Reflect) => Some(1),
                _ => None,
            },
            _ => self.alice_state.map(SignalState::bit),
        }
    }

    /// Alice's raw key bit for a sifted round, from her own records only.
    pub fn key_bit(&self) -> Option<u8> {
        match self.protocol {
            ProtocolId::Scqkd => self.alice_action.map(|a| u8::from(a != PartyAction::Block)),
            ProtocolId::Guoshi => self.alice_action.map(|a| u8::from(a != PartyAction::Reflect)),
            _ => self.alice_state.map(SignalState::bit),
        }
    }

    /// Rounds in which Bob blocks the photon that actually reaches him.
    pub fn is_encoding_round(&self) -> bool {
        let eve = self.eve.unwrap_or(EveRecord {
            outcome: ProbeOutcome::E0,
            guess: 0,
            intercepted: false,
            flipped: false,
        });
        if eve.intercepted {
            return false;
        }
        match self.protocol {
            ProtocolId::Scqkd | ProtocolId::Guoshi => self.alice_bit().is_some(),
            _ => match (self.alice_state, self.bob_action.reflected()) {
                (Some(s), Some(r)) if eve.flipped => s == r,
                (Some(s), Some(r)) => s.orthogonal() == r,
                _ => false,
            },
        }
    }

    /// True when the announced inputs show this sifted bit is an error.
    pub fn is_error(&self) -> bool {
        match self.protocol {
            ProtocolId::Scqkd | ProtocolId::Guoshi => self.alice_bit().is_none(),
            _ => match (self.alice_state, self.bob_action.reflected()) {
                (Some(s), Some(r)) => s == r,
                _ => false,
            },
        }
    }

    /// Bases compatible for the BB84 variant; always true elsewhere.
    pub fn bases_agree(&self) -> bool {
        match (self.protocol, self.alice_state, self.bob_action.reflected()) {
            (ProtocolId::Bb84mod, Some(s), Some(r)) => s.is_diagonal() == r.is_diagonal(),
            _ => true,
        }
    }
}
