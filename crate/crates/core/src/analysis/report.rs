//! Aggregate security report for a protocol under a given attack.

use serde::{Deserialize, Serialize};

use super::bounds::{holevo_analysis, hybrid_threshold};
use super::channel::{
    collision_probability, discrimination_report, guess_channel, guess_channel_record, key_rate,
    mutual_information,
};
use crate::attacks::{probe_conditional_states, Conditioning, EveStrategy};
use crate::error::{Error, Result};
use crate::protocols::optics;
use crate::protocols::ProtocolId;
use crate::qcore::binary_entropy;
use crate::{MixedState, ProbeEnsemble};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    #[serde(rename = "D")]
    pub distance: f64,
    pub p_guess: f64,
    pub e_prime: f64,
    /// QBER the attack causes.
    pub qber: f64,
    #[serde(rename = "I_AB")]
    pub i_ab: f64,
    #[serde(rename = "I_AE_binarized")]
    pub i_ae_binarized: f64,
    #[serde(rename = "I_AE_record")]
    pub i_ae_record: f64,
    pub p_c: f64,
    pub r0: f64,
    /// `r(s) = r0 − s`.
    pub r_s: f64,
    /// Privacy-amplification exponent: Eve keeps `O(2^−s)` bits.
    pub s: f64,
    pub chi: f64,
    pub e_chi: f64,
    pub p_c_chi: f64,
    pub f_star: f64,
    pub e_max: f64,
}

/// Eve's per-round probe ensemble for the coherent part of the attack.
fn coherent_ensemble(
    protocol: ProtocolId,
    strategy: &EveStrategy,
    cascade_n: usize,
) -> Result<ProbeEnsemble> {
    let coherent = match strategy {
        EveStrategy::NoEve | EveStrategy::InterceptResend { .. } => None,
        EveStrategy::Hybrid { .. } => Some(EveStrategy::Noiseless),
        other => Some(*other),
    };
    match coherent {
        Some(s) => probe_conditional_states(protocol, &s, Conditioning::BlockedBranch, cascade_n),
        None => {
            let idle = MixedState::diagonal(optics::probe(3), &[1.0, 0.0, 0.0])?;
            ProbeEnsemble::binary(idle.clone(), idle)
        }
    }
}

pub fn security_report(
    protocol: ProtocolId,
    strategy: &EveStrategy,
    cascade_n: usize,
    s: f64,
) -> Result<SecurityReport> {
    if matches!(protocol, ProtocolId::Pingpong | ProtocolId::Bb84mod) {
        return Err(Error::InvalidCombination {
            protocol: protocol.to_string(),
            attack: "closed-form report".into(),
        });
    }
    strategy.validate(protocol)?;
    let ens = coherent_ensemble(protocol, strategy, cascade_n)?;
    let disc = discrimination_report(&ens)?;
    let binarized = guess_channel(&ens, EveStrategy::guess_rule(protocol))?;
    let p_c = collision_probability(&binarized)?;
    let holevo = holevo_analysis(&ens)?;
    let threshold = hybrid_threshold();

    // Intercepted rounds hand Eve the bit; they occur in a fraction
    // 2f/(1+f) of the sifted key.
    let (qber, weight) = match *strategy {
        EveStrategy::NoisyFlip { f } => (f, 0.0),
        EveStrategy::InterceptResend { f } | EveStrategy::Hybrid { f } => {
            (f / (1.0 + f), 2.0 * f / (1.0 + f))
        }
        _ => (0.0, 0.0),
    };
    let blend = |coherent: f64| (1.0 - weight) * coherent + weight;
    let r0 = key_rate(p_c, 0.0)?;
    Ok(SecurityReport {
        distance: disc.distance,
        p_guess: disc.p_guess,
        e_prime: disc.error,
        qber,
        i_ab: 1.0 - binary_entropy(qber)?,
        i_ae_binarized: blend(mutual_information(&binarized)),
        i_ae_record: blend(mutual_information(&guess_channel_record(&ens)?)),
        p_c,
        r0,
        r_s: key_rate(p_c, s)?,
        s,
        chi: holevo.chi,
        e_chi: holevo.e_chi,
        p_c_chi: holevo.p_c,
        f_star: threshold.f_star,
        e_max: threshold.e_max,
    })
}
