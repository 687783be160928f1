//! Cascaded Noh09: `n` beam splitters in series, each placed in the
//! transmission arm of the previous one; the last transmission arm runs
//! to Bob.
//!
//! Alice's retained arms are carried by one `Arms` subsystem in the
//! one-photon encoding (level 0 = empty, level k = photon in arm k, with
//! polarization j), which keeps `n = 10` well inside the dimension budget.
//! On the way back, beam splitter k combines arm k with the light returning
//! from splitter k+1; its upstream port feeds splitter k−1 and its side
//! port is unmonitored, except at k = 1 where they are D2 and D1.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use super::noh09::apply_bob;
use super::optics::{
    c, mode_b, polarization, port, probe, ABSORBED, E0, PORT_D1, PORT_D2, PORT_DB, PORT_LOST, VAC,
};
use super::round::{sample_round, Evolution, RoundKey};
use super::types::{DetectorEvent, EveRecord, PartyAction, Polarization, ProtocolId, RoundRecord};
use crate::attacks::{self, EveStrategy, LegPlan};
use crate::error::{Error, Result};
use crate::qcore::{Subsystem, SubsystemId, DIMENSION_BUDGET};
use crate::{Complex, PureState};

fn arms(n: usize) -> Subsystem {
    Subsystem::new(SubsystemId::Arms, n + 1)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("cascade length must be at least 1".into()));
    }
    let needed = (n + 1) * 4 * 3;
    if needed > DIMENSION_BUDGET {
        return Err(Error::DimensionBudget(needed, DIMENSION_BUDGET));
    }
    Ok(())
}

/// State after the forward cascade: arm k holds amplitude `2^(−k/2)`, Bob's
/// arm `2^(−n/2)`.
pub fn prepare(n: usize, j: Polarization) -> Result<PureState> {
    check_n(n)?;
    let mut terms: Vec<(Vec<usize>, Complex)> = (1..=n)
        .map(|k| (vec![k, VAC, E0], c(2f64.powf(-(k as f64) / 2.0))))
        .collect();
    terms.push((vec![0, j.level(), E0], c(2f64.powf(-(n as f64) / 2.0))));
    PureState::from_terms(vec![arms(n), mode_b(), probe(3)], &terms)
}

/// Output amplitudes `(port, coefficient)` for a photon entering the return
/// chain at arm `entry` (1..=n) or from Bob (`entry = n + 1`).
fn return_chain(entry: usize, n: usize) -> Vec<(usize, f64)> {
    let s = FRAC_1_SQRT_2;
    let side_port = |k: usize| if k == 1 { PORT_D1 } else { PORT_LOST + k - 2 };
    let mut out = Vec::new();
    // Amplitude leaving the current splitter toward the one upstream.
    let mut up;
    let below;
    if entry > n {
        up = 1.0;
        below = n + 1;
    } else {
        out.push((side_port(entry), s));
        up = s;
        below = entry;
    }
    for k in (1..below).rev() {
        out.push((side_port(k), -s * up));
        up *= s;
    }
    out.push((PORT_D2, up));
    out
}

fn output(state: &PureState, n: usize, j: Polarization) -> Result<PureState> {
    let ports = PORT_LOST + n.saturating_sub(1);
    state.reshape(vec![port(ports), polarization(), probe(3)], |lv| {
        let (arm, b, e) = (lv[0], lv[1], lv[2]);
        let (entry, pol) = match (arm, b) {
            (0, ABSORBED) => return vec![(vec![PORT_DB, VAC, e], c(1.0))],
            (0, b) => (n + 1, b),
            (k, VAC) => (k, j.level()),
            other => unreachable!("not a one-photon configuration: {other:?}"),
        };
        return_chain(entry, n)
            .into_iter()
            .map(|(p, amp)| (vec![p, pol, e], c(amp)))
            .collect()
    })
}

/// Coherent evolution of one cascaded round.
pub fn evolve(n: usize, j: Polarization, action: PartyAction, attacked: bool) -> Result<Evolution> {
    if !matches!(action, PartyAction::RH | PartyAction::RV) {
        return Err(Error::WrongAction {
            protocol: "cascade".into(),
            action: action.to_string(),
        });
    }
    let prepared = prepare(n, j)?;
    let after_onward = if attacked {
        attacks::noiseless_onward(&prepared)?
    } else {
        prepared.clone()
    };
    let after_actions = apply_bob(&after_onward, action)?;
    let after_return = if attacked {
        attacks::noiseless_return(&after_actions)?
    } else {
        after_actions.clone()
    };
    let detection = output(&after_return, n, j)?;
    Ok(Evolution {
        prepared,
        after_onward,
        after_actions,
        after_return,
        detection,
    })
}

pub fn cascade_round<R: Rng + ?Sized>(
    n: usize,
    j: Polarization,
    action: PartyAction,
    eve: &EveStrategy,
    rng: &mut R,
) -> Result<RoundRecord> {
    eve.validate(ProtocolId::Cascade)?;
    let attacked = eve.is_active();
    let key = RoundKey {
        protocol: ProtocolId::Cascade,
        signal: Some(j.into()),
        alice: None,
        bob: action,
        plan: if attacked { LegPlan::Noiseless } else { LegPlan::Passive },
        n,
    };
    let rule = attacked.then(|| EveStrategy::guess_rule(ProtocolId::Cascade));
    let (event, measured) = sample_round(key, || evolve(n, j, action, attacked), rule, rng)?;
    Ok(RoundRecord {
        protocol: ProtocolId::Cascade,
        alice_state: Some(j.into()),
        alice_action: None,
        bob_action: action,
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
