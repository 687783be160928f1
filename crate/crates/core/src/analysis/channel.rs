//! Eve's classical guess channel and the quantities built on it.

use serde::{Deserialize, Serialize};

use crate::attacks::GuessRule;
use crate::error::{Error, Result};
use crate::qcore::{shannon_entropy, trace_distance, SubsystemId};
use crate::ProbeEnsemble;

const ROW_TOL: f64 = 1e-12;

/// Joint law of Alice's bit `X` and Eve's record `Z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuessChannel {
    /// `P(X = x)`.
    pub priors: Vec<f64>,
    /// `P(Z = z | X = x)` as `[x][z]`.
    pub likelihood: Vec<Vec<f64>>,
    /// `P(Z = z)`.
    pub marginal: Vec<f64>,
    /// `P(X = x | Z = z)` as `[z][x]`; `None` where `P(Z = z) = 0`.
    pub posterior: Vec<Option<Vec<f64>>>,
}

impl GuessChannel {
    pub fn new(priors: Vec<f64>, likelihood: Vec<Vec<f64>>) -> Result<Self> {
        if priors.is_empty() || likelihood.len() != priors.len() {
            return Err(Error::ShapeMismatch);
        }
        let nz = likelihood[0].len();
        let is_dist = |row: &[f64]| {
            row.iter().all(|&p| (-ROW_TOL..=1.0 + ROW_TOL).contains(&p))
                && (row.iter().sum::<f64>() - 1.0).abs() <= ROW_TOL
        };
        if !is_dist(&priors) {
            return Err(Error::InvalidPriors(priors.iter().sum()));
        }
        if nz == 0 || likelihood.iter().any(|r| r.len() != nz || !is_dist(r)) {
            return Err(Error::ShapeMismatch);
        }
        let marginal: Vec<f64> = (0..nz)
            .map(|z| priors.iter().zip(&likelihood).map(|(p, r)| p * r[z]).sum())
            .collect();
        let posterior = marginal
            .iter()
            .enumerate()
            .map(|(z, &pz)| {
                (pz > ROW_TOL).then(|| {
                    priors
                        .iter()
                        .zip(&likelihood)
                        .map(|(p, r)| p * r[z] / pz)
                        .collect()
                })
            })
            .collect();
        Ok(Self {
            priors,
            likelihood,
            marginal,
            posterior,
        })
    }

    /// `P(X = x, Z = z)` as `[x][z]`.
    pub fn joint(&self) -> Vec<Vec<f64>> {
        self.priors
            .iter()
            .zip(&self.likelihood)
            .map(|(p, r)| r.iter().map(|l| p * l).collect())
            .collect()
    }
}

/// Trace distance, Helstrom guessing probability and error of a
/// two-member ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub distance: f64,
    pub p_guess: f64,
    pub error: f64,
}

pub fn discrimination_report(ens: &ProbeEnsemble) -> Result<DiscriminationReport> {
    let (a, b) = ens.pair()?;
    let distance = trace_distance(&a.state, &b.state)?;
    let p_guess = 0.5 * (1.0 + distance);
    Ok(DiscriminationReport {
        distance,
        p_guess,
        error: 1.0 - p_guess,
    })
}

fn probe_populations(ens: &ProbeEnsemble) -> Result<Vec<Vec<f64>>> {
    ens.members()
        .iter()
        .map(|m| {
            let rho = if m.state.subsystems().len() == 1 {
                m.state.clone()
            } else {
                m.state.partial_trace(&[SubsystemId::Probe])?
            };
            Ok(rho.populations())
        })
        .collect()
}

/// Channel from Alice's bit to Eve's binarized guess under `rule`.
pub fn guess_channel(ens: &ProbeEnsemble, rule: GuessRule) -> Result<GuessChannel> {
    let pops = probe_populations(ens)?;
    let mut likelihood = Vec::with_capacity(pops.len());
    for row in &pops {
        if row[rule.levels().min(row.len())..].iter().any(|&p| p > ROW_TOL) {
            return Err(Error::ProbeSupport);
        }
        let mut z = vec![0.0; 2];
        for (level, &p) in row.iter().enumerate() {
            let d = rule.z_distribution(crate::attacks::ProbeOutcome::from_level(level));
            z[0] += p * d[0];
            z[1] += p * d[1];
        }
        likelihood.push(z);
    }
    GuessChannel::new(ens.members().iter().map(|m| m.prior).collect(), likelihood)
}

/// Channel from Alice's bit to Eve's raw probe outcome.
pub fn guess_channel_record(ens: &ProbeEnsemble) -> Result<GuessChannel> {
    let pops = probe_populations(ens)?;
    GuessChannel::new(ens.members().iter().map(|m| m.prior).collect(), pops)
}

/// `I(X:Z) = H(X) + H(Z) − H(X,Z)` in bits.
pub fn mutual_information(ch: &GuessChannel) -> f64 {
    let joint: Vec<f64> = ch.joint().into_iter().flatten().collect();
    let i = shannon_entropy(&ch.priors) + shannon_entropy(&ch.marginal) - shannon_entropy(&joint);
    i.max(0.0)
}

/// `Σ_z P(z) Σ_x P(x|z)²` for a binary guess.
pub fn collision_probability(ch: &GuessChannel) -> Result<f64> {
    if ch.marginal.len() != 2 {
        return Err(Error::NonBinaryGuess(ch.marginal.len()));
    }
    Ok(record_collision_probability(ch))
}

/// Same sum over an arbitrary record alphabet.
pub fn record_collision_probability(ch: &GuessChannel) -> f64 {
    ch
        .marginal
        .iter()
        .zip(&ch.posterior)
        .filter_map(|(pz, post)| post.as_ref().map(|p| pz * p.iter().map(|q| q * q).sum::<f64>()))
        .sum()
}

/// `r = −log₂ p_c − s`.
pub fn key_rate(p_c: f64, s: f64) -> Result<f64> {
    if !(0.5 - ROW_TOL..=1.0 + ROW_TOL).contains(&p_c) {
        return Err(Error::InvalidProbability(p_c));
    }
    if !(s >= 0.0) {
        return Err(Error::InvalidParameter(format!("security parameter {s} is negative")));
    }
    Ok(-p_c.min(1.0).log2() - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uninformative_channel() {
        let ch = GuessChannel::new(vec![0.5, 0.5], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(mutual_information(&ch).abs() < 1e-12);
        assert!((collision_probability(&ch).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn perfect_channel() {
        let ch = GuessChannel::new(vec![0.5, 0.5], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!((mutual_information(&ch) - 1.0).abs() < 1e-12);
        assert!((collision_probability(&ch).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_probability_records_are_omitted() {
        let ch = GuessChannel::new(vec![0.5, 0.5], vec![vec![1.0, 0.0, 0.0], vec![0.5, 0.5, 0.0]])
            .unwrap();
        assert!(ch.posterior[2].is_none());
        assert!(matches!(collision_probability(&ch), Err(Error::NonBinaryGuess(3))));
    }

    #[test]
    fn key_rate_range() {
        assert!((key_rate(0.5, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(key_rate(0.4, 0.0).is_err());
        assert!(key_rate(0.6, -1.0).is_err());
    }
}
