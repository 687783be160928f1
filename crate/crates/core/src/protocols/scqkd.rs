//! Semi-counterfactual QKD (Michelson) and Guo-Shi (Mach-Zehnder).
//!
//! Both use a fixed H photon and a two-level probe. Alice blocks or
//! reflects on the internal arm (absorbed photon ⇒ `DA`), Bob on the
//! external arm (⇒ `DB`).
//!
//! Guo-Shi layout: the first beam splitter feeds Alice's arm and Bob's
//! arm; Alice acts first, then Eve applies the attack on Alice's arm and
//! the unattack on Bob's arm, relabels her probe `ε0 ↔ εH`, and only then
//! does Bob act. The second beam splitter uses the same port convention as
//! the Michelson recombination. Key bits are 0 for (reflect, block) and 1
//! for (block, reflect); with this convention Eve's probe ensemble matches
//! the SC-QKD one.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use super::optics::{block_operator, c, michelson_output, mode_a, mode_b, probe, E0, H, VAC};
use super::round::{sample_round, Evolution, RoundKey};
use super::types::{DetectorEvent, EveRecord, PartyAction, ProtocolId, RoundRecord, SignalState};
use crate::attacks::{self, EveStrategy, LegPlan};
use crate::error::{Error, Result};
use crate::qcore::SubsystemId;
use crate::{Matrix, PureState};

fn prepare() -> Result<PureState> {
    let s = FRAC_1_SQRT_2;
    PureState::from_terms(
        vec![mode_a(), mode_b(), probe(2)],
        &[(vec![VAC, H, E0], c(s)), (vec![H, VAC, E0], c(s))],
    )
}

fn act(state: &PureState, mode: SubsystemId, action: PartyAction, protocol: ProtocolId) -> Result<PureState> {
    match action {
        PartyAction::Reflect => Ok(state.clone()),
        PartyAction::Block => state.apply(&[mode], &block_operator(SignalState::H.mode_vector())),
        other => Err(Error::WrongAction {
            protocol: protocol.to_string(),
            action: other.to_string(),
        }),
    }
}

fn probe_relabel() -> Matrix {
    Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// Coherent SC-QKD round.
pub fn scqkd_evolution(alice: PartyAction, bob: PartyAction, attacked: bool) -> Result<Evolution> {
    let p = ProtocolId::Scqkd;
    let prepared = prepare()?;
    let after_onward = if attacked {
        attacks::noiseless_onward(&prepared)?
    } else {
        prepared.clone()
    };
    let after_actions = act(&act(&after_onward, SubsystemId::ModeA, alice, p)?, SubsystemId::ModeB, bob, p)?;
    let after_return = if attacked {
        attacks::noiseless_return(&after_actions)?
    } else {
        after_actions.clone()
    };
    let detection = michelson_output(&after_return, 2)?;
    Ok(Evolution {
        prepared,
        after_onward,
        after_actions,
        after_return,
        detection,
    })
}

/// Coherent Guo-Shi round. `after_onward` holds the state after Alice's
/// action and Eve's attack on Alice's arm; `after_return` the state after
/// the unattack on Bob's arm, the probe relabel and Bob's action.
pub fn guoshi_evolution(alice: PartyAction, bob: PartyAction, attacked: bool) -> Result<Evolution> {
    let p = ProtocolId::Guoshi;
    let prepared = prepare()?;
    let after_alice = act(&prepared, SubsystemId::ModeA, alice, p)?;
    let after_onward = if attacked {
        attacks::noiseless_on(&after_alice, SubsystemId::ModeA)?
    } else {
        after_alice
    };
    let after_actions = if attacked {
        let unattacked = after_onward.apply(
            &[SubsystemId::ModeB, SubsystemId::Probe],
            &attacks::noiseless_unitary(2).adjoint(),
        )?;
        unattacked.apply(&[SubsystemId::Probe], &probe_relabel())?
    } else {
        after_onward.clone()
    };
    let after_return = act(&after_actions, SubsystemId::ModeB, bob, p)?;
    let detection = michelson_output(&after_return, 2)?;
    Ok(Evolution {
        prepared,
        after_onward,
        after_actions,
        after_return,
        detection,
    })
}

fn round<R: Rng + ?Sized>(
    protocol: ProtocolId,
    alice: PartyAction,
    bob: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    eve.validate(protocol)?;
    let attacked = eve.is_active();
    let build = || match protocol {
        ProtocolId::Scqkd => scqkd_evolution(alice, bob, attacked),
        _ => guoshi_evolution(alice, bob, attacked),
    };
    let key = RoundKey {
        protocol,
        signal: None,
        alice: Some(alice),
        bob,
        plan: if attacked { LegPlan::Noiseless } else { LegPlan::Passive },
        n: 1,
    };
    let rule = attacked.then(|| EveStrategy::guess_rule(protocol));
    let (event, measured) = sample_round(key, build, rule, rng)?;
    Ok(RoundRecord {
        protocol,
        alice_state: None,
        alice_action: Some(alice),
        bob_action: bob,
        event,
        eve: measured.map(|(outcome, guess)| EveRecord {
            outcome,
            guess,
            intercepted: false,
            flipped: false,
        }),
        sifted: event == DetectorEvent::D1,
    })
}

pub fn scqkd_round<R: Rng + ?Sized>(
    alice: PartyAction,
    bob: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    round(ProtocolId::Scqkd, alice, bob, eve, rng)
}

pub fn guoshi_round<R: Rng + ?Sized>(
    alice: PartyAction,
    bob: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    round(ProtocolId::Guoshi, alice, bob, eve, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::optics::prob_of;
    use DetectorEvent::*;
    use PartyAction::{Block, Reflect};

    #[test]
    fn scqkd_statistics() {
        let d = scqkd_evolution(Block, Reflect, false).unwrap().distribution();
        assert!((prob_of(&d, D1) - 0.25).abs() < 1e-12);
        assert!((prob_of(&d, DA) - 0.5).abs() < 1e-12);
        let d = scqkd_evolution(Reflect, Reflect, true).unwrap().distribution();
        assert!((prob_of(&d, D2) - 1.0).abs() < 1e-12);
        let d = scqkd_evolution(Block, Block, false).unwrap().distribution();
        assert!((prob_of(&d, DA) - 0.5).abs() < 1e-12);
        assert!((prob_of(&d, DB) - 0.5).abs() < 1e-12);
        assert_eq!(prob_of(&d, D1) + prob_of(&d, D2), 0.0);
    }

    #[test]
    fn guoshi_attack_is_noiseless() {
        for a in [Block, Reflect] {
            for b in [Block, Reflect] {
                let clean = guoshi_evolution(a, b, false).unwrap().distribution();
                let attacked = guoshi_evolution(a, b, true).unwrap().distribution();
                for e in [D1, D2, DA, DB] {
                    assert!((prob_of(&clean, e) - prob_of(&attacked, e)).abs() < 1e-12);
                }
            }
        }
        let d = guoshi_evolution(Reflect, Reflect, false).unwrap().distribution();
        assert!((prob_of(&d, D2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_noh09_actions() {
        assert!(scqkd_evolution(PartyAction::RH, Reflect, false).is_err());
    }
}
