//! Eve's probe ensembles computed from the full state-vector evolution.

use super::strategy::{EveStrategy, LegPlan};
use crate::error::{Error, Result};
use crate::protocols::optics::{absorbed_as_vacuum, probe_given_event};
use crate::protocols::{
    cascade_evolution, guoshi_evolution, michelson_evolution, scqkd_evolution, DetectorEvent,
    Evolution, PartyAction, Polarization, ProtocolId,
};
use crate::qcore::{trace_distance, SubsystemId};
use crate::{MixedState, ProbeEnsemble};

/// Which event Eve's probe state is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conditioning {
    /// Reduced probe state over the whole round in which the bit is encoded
    /// (Bob blocks), all detector outcomes included.
    BlockedBranch,
    /// Reduced probe state after projecting onto a D1 click.
    D1Event,
}

fn probe_state(evolution: &Evolution, conditioning: Conditioning) -> Result<MixedState> {
    match conditioning {
        Conditioning::BlockedBranch => evolution
            .detection
            .to_density()
            .partial_trace(&[SubsystemId::Probe]),
        Conditioning::D1Event => probe_given_event(&evolution.detection, DetectorEvent::D1),
    }
}

/// The key-encoding evolutions of bit `x` and the weight of each.
fn encoding_rounds(
    protocol: ProtocolId,
    strategy: &EveStrategy,
    x: u8,
    cascade_n: usize,
) -> Result<Vec<(f64, Evolution)>> {
    let no_probe = || Error::InvalidCombination {
        protocol: protocol.to_string(),
        attack: strategy.id().to_string(),
    };
    use PartyAction::{Block, Reflect};
    let j = Polarization::from_bit(x);
    let blocking = j.flipped().reflecting_action();
    match (protocol, strategy) {
        (ProtocolId::Noh09, EveStrategy::Noiseless) => Ok(vec![(
            1.0,
            michelson_evolution(j.into(), blocking, LegPlan::Noiseless)?,
        )]),
        (ProtocolId::Noh09, EveStrategy::NoisyFlip { f }) => Ok(vec![
            (1.0 - f, michelson_evolution(j.into(), blocking, LegPlan::Noiseless)?),
            // The flipped photon is blocked when Bob reflects j.
            (*f, michelson_evolution(j.into(), j.reflecting_action(), LegPlan::Flip)?),
        ]),
        (ProtocolId::Scqkd, EveStrategy::Noiseless) => {
            let (a, b) = if x == 0 { (Block, Reflect) } else { (Reflect, Block) };
            Ok(vec![(1.0, scqkd_evolution(a, b, true)?)])
        }
        (ProtocolId::Guoshi, EveStrategy::GuoShiAttack) => {
            let (a, b) = if x == 0 { (Reflect, Block) } else { (Block, Reflect) };
            Ok(vec![(1.0, guoshi_evolution(a, b, true)?)])
        }
        (ProtocolId::Cascade, EveStrategy::CascadeAttack) => {
            Ok(vec![(1.0, cascade_evolution(cascade_n, j, blocking, true)?)])
        }
        _ => Err(no_probe()),
    }
}

/// Eve's probe ensemble `{(½, ρ_E^(x))}` for bits 0 and 1.
pub fn probe_conditional_states(
    protocol: ProtocolId,
    strategy: &EveStrategy,
    conditioning: Conditioning,
    cascade_n: usize,
) -> Result<ProbeEnsemble> {
    let mut states = Vec::with_capacity(2);
    for x in [0u8, 1] {
        let rounds = encoding_rounds(protocol, strategy, x, cascade_n)?;
        let mut parts = Vec::new();
        for (w, evolution) in &rounds {
            if *w <= 0.0 {
                continue;
            }
            let weight = match conditioning {
                Conditioning::BlockedBranch => *w,
                Conditioning::D1Event => {
                    w * crate::protocols::optics::prob_of(&evolution.distribution(), DetectorEvent::D1)
                }
            };
            if weight > 0.0 {
                parts.push((weight, probe_state(evolution, conditioning)?));
            }
        }
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.is_empty() || total <= 0.0 {
            return Err(Error::ZeroProbabilityEvent);
        }
        let weighted: Vec<(f64, &MixedState)> = parts.iter().map(|(w, r)| (w / total, r)).collect();
        states.push(MixedState::mixture(&weighted)?);
    }
    let rho1 = states.pop().expect("two states");
    let rho0 = states.pop().expect("two states");
    ProbeEnsemble::binary(rho0, rho1)
}

/// Alice-side state of a Noh09 mismatch round with and without the attack.
#[derive(Debug, Clone, PartialEq)]
pub struct Disturbance {
    /// Under the strategy.
    pub sigma1: MixedState,
    /// Without any attack.
    pub sigma2: MixedState,
    pub distance: f64,
}

/// Mode-A reduced state after the return leg of a Noh09 mismatch round.
/// Bob's absorbed photon is written as vacuum.
pub fn residual_disturbance(
    protocol: ProtocolId,
    strategy: &EveStrategy,
    j: Polarization,
) -> Result<Disturbance> {
    if protocol != ProtocolId::Noh09 {
        return Err(Error::InvalidCombination {
            protocol: protocol.to_string(),
            attack: strategy.id().to_string(),
        });
    }
    strategy.validate(protocol)?;
    let alice_side = |plan| -> Result<MixedState> {
        let ev = michelson_evolution(j.into(), j.flipped().reflecting_action(), plan)?;
        absorbed_as_vacuum(&ev.after_return)?
            .to_density()
            .partial_trace(&[SubsystemId::ModeA])
    };
    let plan = match strategy {
        EveStrategy::NoEve => LegPlan::Passive,
        EveStrategy::Noiseless => LegPlan::Noiseless,
        _ => {
            return Err(Error::InvalidCombination {
                protocol: protocol.to_string(),
                attack: strategy.id().to_string(),
            })
        }
    };
    let sigma1 = alice_side(plan)?;
    let sigma2 = alice_side(LegPlan::Passive)?;
    let distance = trace_distance(&sigma1, &sigma2)?;
    Ok(Disturbance {
        sigma1,
        sigma2,
        distance,
    })
}
