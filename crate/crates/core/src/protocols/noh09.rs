//! Noh09 and its four-state (BB84-augmented) variant on a Michelson
//! interferometer whose external arm runs to Bob.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use super::optics::{self, block_operator, c, michelson_output, mode_a, mode_b, probe, E0, VAC};
use super::round::{sample_round, Evolution, RoundKey};
use super::types::{
    DetectorEvent, EveRecord, PartyAction, Polarization, ProtocolId, RoundRecord, SignalState,
};
use crate::attacks::{self, intercept, EveStrategy, LegPlan};
use crate::error::{Error, Result};
use crate::qcore::SubsystemId;
use crate::PureState;

/// `(|0, s⟩ + |s, 0⟩)/√2 ⊗ |ε0⟩` over `[mode-A, mode-B, probe]`.
pub fn prepare(signal: SignalState) -> Result<PureState> {
    let v = signal.mode_vector();
    let mut terms = Vec::new();
    for level in [optics::H, optics::V] {
        if v[level] != 0.0 {
            terms.push((vec![VAC, level, E0], c(FRAC_1_SQRT_2 * v[level])));
            terms.push((vec![level, VAC, E0], c(FRAC_1_SQRT_2 * v[level])));
        }
    }
    PureState::from_terms(vec![mode_a(), mode_b(), probe(3)], &terms)
}

/// Bob's reflect/block action on the external arm.
pub fn apply_bob(state: &PureState, action: PartyAction) -> Result<PureState> {
    let reflected = action.reflected().ok_or_else(|| Error::WrongAction {
        protocol: "noh09".into(),
        action: action.to_string(),
    })?;
    state.apply(
        &[SubsystemId::ModeB],
        &block_operator(reflected.orthogonal().mode_vector()),
    )
}

/// Full coherent evolution of a round for a non-intercepting plan.
pub fn evolve(signal: SignalState, action: PartyAction, plan: LegPlan) -> Result<Evolution> {
    let prepared = prepare(signal)?;
    let after_onward = match plan {
        LegPlan::Passive => prepared.clone(),
        LegPlan::Noiseless => attacks::noiseless_onward(&prepared)?,
        LegPlan::Flip => attacks::flip_onward(&prepared)?,
        LegPlan::Intercept => {
            return Err(Error::InvalidParameter(
                "intercept-resend rounds are event-level".into(),
            ))
        }
    };
    let after_actions = apply_bob(&after_onward, action)?;
    let after_return = match plan {
        LegPlan::Passive => after_actions.clone(),
        LegPlan::Flip => attacks::flip_return(&after_actions)?,
        _ => attacks::noiseless_return(&after_actions)?,
    };
    let detection = michelson_output(&after_return, 3)?;
    Ok(Evolution {
        prepared,
        after_onward,
        after_actions,
        after_return,
        detection,
    })
}

fn check_noh09_action(action: PartyAction) -> Result<()> {
    if matches!(action, PartyAction::RH | PartyAction::RV) {
        Ok(())
    } else {
        Err(Error::WrongAction {
            protocol: "noh09".into(),
            action: action.to_string(),
        })
    }
}

/// Exact detector distribution of a Noh09 round, averaged over Eve's per-round plan.
pub fn noh09_distribution(
    j: Polarization,
    action: PartyAction,
    eve: &EveStrategy,
) -> Result<Vec<(DetectorEvent, f64)>> {
    check_noh09_action(action)?;
    eve.validate(ProtocolId::Noh09)?;
    let coherent = |plan| -> Result<_> { Ok(evolve(j.into(), action, plan)?.distribution()) };
    let parts: Vec<(f64, Vec<(DetectorEvent, f64)>)> = match *eve {
        EveStrategy::NoEve => vec![(1.0, coherent(LegPlan::Passive)?)],
        EveStrategy::Noiseless => vec![(1.0, coherent(LegPlan::Noiseless)?)],
        EveStrategy::NoisyFlip { f } => vec![
            (1.0 - f, coherent(LegPlan::Noiseless)?),
            (f, coherent(LegPlan::Flip)?),
        ],
        EveStrategy::InterceptResend { f } => vec![
            (1.0 - f, coherent(LegPlan::Passive)?),
            (f, intercept::intercept_distribution()),
        ],
        EveStrategy::Hybrid { f } => vec![
            (1.0 - f, coherent(LegPlan::Noiseless)?),
            (f, intercept::intercept_distribution()),
        ],
        _ => unreachable!("validated above"),
    };
    let mut out: Vec<(DetectorEvent, f64)> = Vec::new();
    for (w, dist) in parts {
        for (e, p) in dist {
            match out.iter_mut().find(|(x, _)| *x == e) {
                Some((_, acc)) => *acc += w * p,
                None => out.push((e, w * p)),
            }
        }
    }
    out.retain(|(_, p)| *p > 0.0);
    out.sort_by_key(|(e, _)| *e);
    Ok(out)
}

/// One sampled Noh09 round.
pub fn noh09_round<R: Rng + ?Sized>(
    j: Polarization,
    action: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    check_noh09_action(action)?;
    eve.validate(ProtocolId::Noh09)?;
    let plan = eve.plan(rng);
    let (event, eve_record) = if plan == LegPlan::Intercept {
        let (event, record) = intercept::intercept_resend(j, rng);
        (event, Some(record))
    } else {
        let key = RoundKey {
            protocol: ProtocolId::Noh09,
            signal: Some(j.into()),
            alice: None,
            bob: action,
            plan,
            n: 1,
        };
        let rule = eve
            .is_active()
            .then(|| EveStrategy::guess_rule(ProtocolId::Noh09));
        let (event, measured) = sample_round(key, || evolve(j.into(), action, plan), rule, rng)?;
        let record = measured.map(|(outcome, guess)| EveRecord {
            outcome,
            guess,
            intercepted: false,
            flipped: plan == LegPlan::Flip,
        });
        (event, record)
    };
    Ok(RoundRecord {
        protocol: ProtocolId::Noh09,
        alice_state: Some(j.into()),
        alice_action: None,
        bob_action: action,
        event,
        eve: eve_record,
        sifted: event == DetectorEvent::D1,
    })
}

/// One sampled round of the four-state variant; Eve uses the H/V attack.
pub fn bb84mod_round<R: Rng + ?Sized>(
    signal: SignalState,
    action: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    eve.validate(ProtocolId::Bb84mod)?;
    if action.reflected().is_none() {
        return Err(Error::WrongAction {
            protocol: "bb84mod".into(),
            action: action.to_string(),
        });
    }
    let plan = eve.plan(rng);
    let key = RoundKey {
        protocol: ProtocolId::Bb84mod,
        signal: Some(signal),
        alice: None,
        bob: action,
        plan,
        n: 1,
    };
    let rule = eve
        .is_active()
        .then(|| EveStrategy::guess_rule(ProtocolId::Bb84mod));
    let (event, measured) = sample_round(key, || evolve(signal, action, plan), rule, rng)?;
    Ok(RoundRecord {
        protocol: ProtocolId::Bb84mod,
        alice_state: Some(signal),
        alice_action: None,
        bob_action: action,
        event,
        eve: measured.map(|(outcome, guess)| EveRecord {
            outcome,
            guess,
            intercepted: false,
            flipped: plan == LegPlan::Flip,
        }),
        sifted: event == DetectorEvent::D1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::optics::prob_of;
    use DetectorEvent::*;

    #[test]
    fn match_round_is_bright_port() {
        for j in [Polarization::H, Polarization::V] {
            let d = noh09_distribution(j, j.reflecting_action(), &EveStrategy::NoEve).unwrap();
            assert!((prob_of(&d, D2) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatch_round_splits_three_ways() {
        let d = noh09_distribution(Polarization::H, PartyAction::RV, &EveStrategy::NoEve).unwrap();
        assert!((prob_of(&d, DB) - 0.5).abs() < 1e-12);
        assert!((prob_of(&d, D2) - 0.25).abs() < 1e-12);
        assert!((prob_of(&d, D1) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn wrong_action_family_rejected() {
        let mut rng = rand::rng();
        assert!(matches!(
            noh09_round(Polarization::H, PartyAction::Block, &EveStrategy::NoEve, &mut rng),
            Err(Error::WrongAction { .. })
        ));
    }

    #[test]
    fn diagonal_match_without_eve_is_bright() {
        let ev = evolve(SignalState::Plus, PartyAction::RPlus, LegPlan::Passive).unwrap();
        assert!((prob_of(&ev.distribution(), D2) - 1.0).abs() < 1e-12);
    }
}
