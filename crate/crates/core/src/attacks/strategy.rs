use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::guess::GuessRule;
use crate::error::{Error, Result};
use crate::protocols::ProtocolId;

/// Attack family as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackKind {
    None,
    Noiseless,
    NoisyFlip,
    InterceptResend,
    Hybrid,
}

impl AttackKind {
    pub const ALL: [AttackKind; 5] = [
        AttackKind::None,
        AttackKind::Noiseless,
        AttackKind::NoisyFlip,
        AttackKind::InterceptResend,
        AttackKind::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::None => "none",
            AttackKind::Noiseless => "noiseless",
            AttackKind::NoisyFlip => "noisyflip",
            AttackKind::InterceptResend => "interceptresend",
            AttackKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown attack `{s}`")))
    }
}

/// Eve's strategy for a session.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "lowercase")]
pub enum EveStrategy {
    NoEve,
    /// Attack/unattack on the external arm.
    Noiseless,
    /// Flip variant on a fraction `f` of rounds, noiseless otherwise.
    NoisyFlip { f: f64 },
    /// Intercept-resend on a fraction `f` of rounds, passive otherwise.
    InterceptResend { f: f64 },
    /// Intercept-resend on a fraction `f` of rounds, noiseless otherwise.
    Hybrid { f: f64 },
    PingPongAttack,
    /// Attack on Alice's arm, unattack on Bob's arm of the Mach-Zehnder.
    GuoShiAttack,
    /// Attack on the transmission arm of the last cascade beam splitter.
    CascadeAttack,
}

/// What Eve does in one particular round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegPlan {
    Passive,
    Noiseless,
    Flip,
    Intercept,
}

impl EveStrategy {
    /// The concrete strategy for `kind` on `protocol`.
    pub fn resolve(protocol: ProtocolId, kind: AttackKind, f: f64) -> Result<Self> {
        let strategy = match kind {
            AttackKind::None => EveStrategy::NoEve,
            AttackKind::Noiseless => match protocol {
                ProtocolId::Guoshi => EveStrategy::GuoShiAttack,
                ProtocolId::Cascade => EveStrategy::CascadeAttack,
                ProtocolId::Pingpong => EveStrategy::PingPongAttack,
                _ => EveStrategy::Noiseless,
            },
            AttackKind::NoisyFlip => EveStrategy::NoisyFlip { f },
            AttackKind::InterceptResend => EveStrategy::InterceptResend { f },
            AttackKind::Hybrid => EveStrategy::Hybrid { f },
        };
        strategy.validate(protocol)?;
        Ok(strategy)
    }

    pub fn id(&self) -> &'static str {
        match self {
            EveStrategy::NoEve => "none",
            EveStrategy::Noiseless => "noiseless",
            EveStrategy::NoisyFlip { .. } => "noisyflip",
            EveStrategy::InterceptResend { .. } => "interceptresend",
            EveStrategy::Hybrid { .. } => "hybrid",
            EveStrategy::PingPongAttack => "pingpong",
            EveStrategy::GuoShiAttack => "guoshi",
            EveStrategy::CascadeAttack => "cascade",
        }
    }

    pub fn fraction(&self) -> Option<f64> {
        match *self {
            EveStrategy::NoisyFlip { f }
            | EveStrategy::InterceptResend { f }
            | EveStrategy::Hybrid { f } => Some(f),
            _ => None,
        }
    }

    pub fn is_active(&self) -> bool {
        !matches!(self, EveStrategy::NoEve)
    }

    /// Checks the parameter range and that the strategy fits the protocol.
    pub fn validate(&self, protocol: ProtocolId) -> Result<()> {
        if let Some(f) = self.fraction() {
            if !(0.0..=1.0).contains(&f) {
                return Err(Error::InvalidProbability(f));
            }
        }
        let ok = match self {
            EveStrategy::NoEve => true,
            EveStrategy::Noiseless => matches!(
                protocol,
                ProtocolId::Noh09 | ProtocolId::Scqkd | ProtocolId::Bb84mod
            ),
            EveStrategy::NoisyFlip { .. }
            | EveStrategy::InterceptResend { .. }
            | EveStrategy::Hybrid { .. } => protocol == ProtocolId::Noh09,
            EveStrategy::PingPongAttack => protocol == ProtocolId::Pingpong,
            EveStrategy::GuoShiAttack => protocol == ProtocolId::Guoshi,
            EveStrategy::CascadeAttack => protocol == ProtocolId::Cascade,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCombination {
                protocol: protocol.to_string(),
                attack: self.id().to_string(),
            })
        }
    }

    /// Draws this round's plan.
    pub fn plan<R: Rng + ?Sized>(&self, rng: &mut R) -> LegPlan {
        let coin = |rng: &mut R, f: f64| f > 0.0 && rng.random_bool(f.min(1.0));
        match *self {
            EveStrategy::NoEve => LegPlan::Passive,
            EveStrategy::NoisyFlip { f } => {
                if coin(rng, f) {
                    LegPlan::Flip
                } else {
                    LegPlan::Noiseless
                }
            }
            EveStrategy::InterceptResend { f } => {
                if coin(rng, f) {
                    LegPlan::Intercept
                } else {
                    LegPlan::Passive
                }
            }
            EveStrategy::Hybrid { f } => {
                if coin(rng, f) {
                    LegPlan::Intercept
                } else {
                    LegPlan::Noiseless
                }
            }
            _ => LegPlan::Noiseless,
        }
    }

    /// Guess rule Eve applies to her probe on `protocol`.
    pub fn guess_rule(protocol: ProtocolId) -> GuessRule {
        match protocol {
            ProtocolId::Scqkd | ProtocolId::Guoshi => GuessRule::ZeroDefault,
            _ => GuessRule::TernaryCoin,
        }
    }
}
