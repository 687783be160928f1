//! Holevo bound, hybrid-attack threshold and cascade scaling.

use serde::{Deserialize, Serialize};

use super::channel::{
    collision_probability, discrimination_report, guess_channel, guess_channel_record, key_rate,
    record_collision_probability,
};
use crate::attacks::{probe_conditional_states, Conditioning, EveStrategy, GuessRule};
use crate::error::{Error, Result};
use crate::protocols::ProtocolId;
use crate::qcore::{binary_entropy, holevo_chi};
use crate::ProbeEnsemble;

fn h(p: f64) -> f64 {
    binary_entropy(p.clamp(0.0, 1.0)).expect("clamped into range")
}

/// The `e ∈ [0, ½]` with `h(e) = t`.
pub fn entropy_inverse(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidProbability(t));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolevoAnalysis {
    pub chi: f64,
    /// Error of a binary symmetric channel leaking `χ` bits.
    pub e_chi: f64,
    pub p_c: f64,
    pub r0: f64,
}

pub fn holevo_analysis(ens: &ProbeEnsemble) -> Result<HolevoAnalysis> {
    let chi = holevo_chi(ens)?;
    if chi > 1.0 + 1e-10 {
        return Err(Error::ChiTooLarge(chi));
    }
    let e_chi = entropy_inverse((1.0 - chi).clamp(0.0, 1.0))?;
    let p_c = e_chi * e_chi + (1.0 - e_chi) * (1.0 - e_chi);
    Ok(HolevoAnalysis {
        chi,
        e_chi,
        p_c,
        r0: key_rate(p_c, 0.0)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridPoint {
    pub f: f64,
    pub e: f64,
    pub i_ab: f64,
    pub i_ae: f64,
}

/// Mixed noiseless/intercept-resend attack with intercept fraction `f`.
pub fn hybrid_analysis(f: f64) -> Result<HybridPoint> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidProbability(f));
    }
    let e = f / (1.0 + f);
    Ok(HybridPoint {
        f,
        e,
        i_ab: 1.0 - h(e),
        i_ae: (1.0 - f) / (1.0 + f) * (1.0 - h(0.25)) + 2.0 * f / (1.0 + f),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridThreshold {
    pub f_star: f64,
    pub e_max: f64,
}

/// Smallest intercept fraction at which Eve's information reaches Bob's.
pub fn hybrid_threshold() -> HybridThreshold {
    let gap = |f: f64| {
        let p = hybrid_analysis(f).expect("f in range");
        p.i_ae - p.i_ab
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f_star = 0.5 * (lo + hi);
    HybridThreshold {
        f_star,
        e_max: f_star / (1.0 + f_star),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeReport {
    pub n: usize,
    pub distance: f64,
    /// Collision probability of Eve's raw probe outcome.
    pub p_c: f64,
    /// Collision probability of her binarized guess.
    pub p_c_binarized: f64,
    /// `−log₂ p_c`.
    pub r0: f64,
}

pub fn cascade_report(n: usize) -> Result<CascadeReport> {
    let ens = probe_conditional_states(
        ProtocolId::Cascade,
        &EveStrategy::CascadeAttack,
        Conditioning::BlockedBranch,
        n,
    )?;
    let distance = discrimination_report(&ens)?.distance;
    let p_c = record_collision_probability(&guess_channel_record(&ens)?);
    Ok(CascadeReport {
        n,
        distance,
        p_c,
        p_c_binarized: collision_probability(&guess_channel(&ens, GuessRule::TernaryCoin)?)?,
        r0: key_rate(p_c, 0.0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_inverse_endpoints() {
        assert_eq!(entropy_inverse(0.0).unwrap(), 0.0);
        assert!((entropy_inverse(1.0).unwrap() - 0.5).abs() < 1e-9);
        assert!((entropy_inverse(0.5).unwrap() - 0.110028).abs() < 1e-6);
        assert!(entropy_inverse(1.5).is_err());
    }

    #[test]
    fn hybrid_endpoints() {
        let p = hybrid_analysis(1.0).unwrap();
        assert!((p.e - 0.5).abs() < 1e-12 && p.i_ab.abs() < 1e-12 && (p.i_ae - 1.0).abs() < 1e-12);
        assert!(hybrid_analysis(-0.1).is_err());
    }
}
