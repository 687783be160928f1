//! Seeded Monte Carlo sessions.
//!
//! Round `i` draws all of its randomness from a ChaCha8 stream keyed by
//! `(seed, i)`, so a session is a pure function of its config and the
//! result does not depend on how rounds are spread over worker threads.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cascade::cascade_round;
use super::noh09::{bb84mod_round, noh09_round};
use super::scqkd::{guoshi_round, scqkd_round};
use super::types::{DetectorEvent, PartyAction, Polarization, ProtocolId, RoundRecord, SignalState};
use crate::attacks::EveStrategy;
use crate::error::{Error, Result};

/// Stream reserved for QBER sampling; round indices never reach it.
const QBER_STREAM: u64 = u64::MAX;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub protocol: ProtocolId,
    pub rounds: u64,
    pub strategy: EveStrategy,
    /// Number of beam splitters for the cascade protocol.
    pub cascade_n: usize,
    pub seed: u64,
    /// Fraction of sifted rounds sacrificed for QBER estimation.
    pub sample_fraction: f64,
    /// Abort when the estimated QBER reaches this value.
    pub abort_threshold: f64,
    /// Privacy-amplification security parameter.
    pub security_parameter: f64,
}

impl SessionConfig {
    pub fn new(protocol: ProtocolId, rounds: u64, strategy: EveStrategy, seed: u64) -> Self {
        Self {
            protocol,
            rounds,
            strategy,
            cascade_n: 1,
            seed,
            sample_fraction: 1.0,
            abort_threshold: 0.11,
            security_parameter: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidParameter("round count must be at least 1".into()));
        }
        for x in [self.sample_fraction, self.abort_threshold] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidProbability(x));
            }
        }
        if self.sample_fraction == 0.0 {
            return Err(Error::InvalidParameter("sample fraction must be positive".into()));
        }
        if !(self.security_parameter >= 0.0) {
            return Err(Error::InvalidParameter("security parameter must be non-negative".into()));
        }
        if self.protocol == ProtocolId::Pingpong {
            return Err(Error::InvalidCombination {
                protocol: self.protocol.to_string(),
                attack: "session sampling (message mode is exact)".into(),
            });
        }
        self.strategy.validate(self.protocol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionStats {
    pub rounds: u64,
    /// Count per detector event name; every event is listed.
    pub counts: BTreeMap<String, u64>,
    pub sifted_key: Vec<u8>,
    pub sifted_length: usize,
    /// Estimated QBER; `None` when no round was sifted.
    pub qber: Option<f64>,
    /// Eve's guess accuracy over sifted rounds.
    pub eve_accuracy_sifted: Option<f64>,
    /// Eve's guess accuracy over rounds where Bob blocked the photon.
    pub eve_accuracy_blocked: Option<f64>,
    /// Empirical `P(X = x | Z = z)` as `[z][x]` over sifted rounds.
    pub channel_table: Option<[[f64; 2]; 2]>,
    pub abort: bool,
}

fn round_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn pick<T: Copy, R: Rng + ?Sized>(options: &[T], rng: &mut R) -> T {
    options[rng.random_range(0..options.len())]
}

/// Runs round `index` of a session.
pub fn run_round(cfg: &SessionConfig, index: u64) -> Result<RoundRecord> {
    let mut rng = round_rng(cfg.seed, index);
    let eve = &cfg.strategy;
    let hv = [PartyAction::RH, PartyAction::RV];
    let br = [PartyAction::Block, PartyAction::Reflect];
    match cfg.protocol {
        ProtocolId::Noh09 => {
            let j = Polarization::from_bit(rng.random_range(0..2));
            let action = pick(&hv, &mut rng);
            noh09_round(j, action, eve, &mut rng)
        }
        ProtocolId::Cascade => {
            let j = Polarization::from_bit(rng.random_range(0..2));
            let action = pick(&hv, &mut rng);
            cascade_round(cfg.cascade_n, j, action, eve, &mut rng)
        }
        ProtocolId::Scqkd | ProtocolId::Guoshi => {
            let a = pick(&br, &mut rng);
            let b = pick(&br, &mut rng);
            if cfg.protocol == ProtocolId::Scqkd {
                scqkd_round(a, b, eve, &mut rng)
            } else {
                guoshi_round(a, b, eve, &mut rng)
            }
        }
        ProtocolId::Bb84mod => {
            let s = pick(&SignalState::ALL, &mut rng);
            let action = PartyAction::from_reflected(pick(&SignalState::ALL, &mut rng));
            bb84mod_round(s, action, eve, &mut rng)
        }
        ProtocolId::Pingpong => unreachable!("rejected by validate"),
    }
}

/// All round records of a session, in round order.
pub fn run_records(cfg: &SessionConfig) -> Result<Vec<RoundRecord>> {
    cfg.validate()?;
    (0..cfg.rounds)
        .into_par_iter()
        .map(|i| run_round(cfg, i))
        .collect()
}

/// Runs a session on the global thread pool.
pub fn run_session(cfg: &SessionConfig) -> Result<SessionStats> {
    summarize(cfg, &run_records(cfg)?)
}

/// Runs a session on a dedicated pool of `workers` threads.
pub fn run_session_with_workers(cfg: &SessionConfig, workers: usize) -> Result<SessionStats> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| run_session(cfg))
}

/// Rounds that contribute key bits: D1 clicks, with matching bases for the
/// four-state variant.
fn sifted(records: &[RoundRecord]) -> impl Iterator<Item = &RoundRecord> {
    records.iter().filter(|r| r.sifted && r.bases_agree())
}

/// Alice's sifted key.
pub fn sift(records: &[RoundRecord]) -> Vec<u8> {
    sifted(records).filter_map(RoundRecord::key_bit).collect()
}

/// QBER from a random `fraction` of the sifted rounds.
///
/// For polarization-encoded protocols this is the mean of the error rates
/// of the H- and V-encoded samples; for block/reflect encodings it is the
/// plain error fraction.
pub fn estimate_qber<R: Rng + ?Sized>(records: &[RoundRecord], fraction: f64, rng: &mut R) -> Result<f64> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidProbability(fraction));
    }
    let pool: Vec<&RoundRecord> = sifted(records).collect();
    if pool.is_empty() {
        return Err(Error::NoSiftedRounds);
    }
    let k = ((pool.len() as f64 * fraction).ceil() as usize).clamp(1, pool.len());
    let sample: Vec<&RoundRecord> = index::sample(rng, pool.len(), k)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    let rate = |rs: &[&RoundRecord]| {
        rs.iter().filter(|r| r.is_error()).count() as f64 / rs.len() as f64
    };
    match sample[0].protocol {
        ProtocolId::Scqkd | ProtocolId::Guoshi => Ok(rate(&sample)),
        _ => {
            let classes: Vec<f64> = [0u8, 1]
                .iter()
                .filter_map(|&b| {
                    let cls: Vec<&RoundRecord> =
                        sample.iter().copied().filter(|r| r.key_bit() == Some(b)).collect();
                    (!cls.is_empty()).then(|| rate(&cls))
                })
                .collect();
            Ok(classes.iter().sum::<f64>() / classes.len() as f64)
        }
    }
}

fn accuracy<'a>(rounds: impl Iterator<Item = &'a RoundRecord>) -> Option<f64> {
    let (mut hits, mut total) = (0u64, 0u64);
    for r in rounds {
        if let (Some(e), Some(x)) = (r.eve, r.alice_bit()) {
            total += 1;
            hits += u64::from(e.guess == x);
        }
    }
    (total > 0).then(|| hits as f64 / total as f64)
}

pub fn summarize(cfg: &SessionConfig, records: &[RoundRecord]) -> Result<SessionStats> {
    let mut counts: BTreeMap<String, u64> =
        DetectorEvent::ALL.iter().map(|e| (e.name().to_string(), 0)).collect();
    for r in records {
        *counts.get_mut(r.event.name()).expect("all events listed") += 1;
    }
    let sifted_key = sift(records);
    let mut qrng = round_rng(cfg.seed, QBER_STREAM);
    let qber = match estimate_qber(records, cfg.sample_fraction, &mut qrng) {
        Ok(e) => Some(e),
        Err(Error::NoSiftedRounds) => None,
        Err(e) => return Err(e),
    };

    let mut joint = [[0u64; 2]; 2];
    for r in sifted(records) {
        if let (Some(e), Some(x)) = (r.eve, r.alice_bit()) {
            joint[e.guess as usize][x as usize] += 1;
        }
    }
    let channel_table = {
        let total: u64 = joint.iter().flatten().sum();
        (total > 0).then(|| {
            let mut t = [[0.0; 2]; 2];
            for z in 0..2 {
                let row: u64 = joint[z].iter().sum();
                for x in 0..2 {
                    t[z][x] = if row > 0 { joint[z][x] as f64 / row as f64 } else { 0.0 };
                }
            }
            t
        })
    };

    Ok(SessionStats {
        rounds: cfg.rounds,
        counts,
        sifted_length: sifted_key.len(),
        sifted_key,
        qber,
        eve_accuracy_sifted: accuracy(sifted(records)),
        eve_accuracy_blocked: accuracy(records.iter().filter(|r| r.is_encoding_round())),
        channel_table,
        abort: qber.is_some_and(|e| e >= cfg.abort_threshold),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(event: DetectorEvent, j: Polarization, action: PartyAction) -> RoundRecord {
        RoundRecord {
            protocol: ProtocolId::Noh09,
            alice_state: Some(j.into()),
            alice_action: None,
            bob_action: action,
            event,
            eve: None,
            sifted: event == DetectorEvent::D1,
        }
    }

    #[test]
    fn sift_keeps_only_d1() {
        let rs = [
            record(DetectorEvent::D2, Polarization::H, PartyAction::RH),
            record(DetectorEvent::D1, Polarization::V, PartyAction::RH),
        ];
        assert_eq!(sift(&rs), vec![1]);
        assert!(sift(&[]).is_empty());
    }

    #[test]
    fn qber_needs_sifted_rounds() {
        let mut rng = round_rng(0, 0);
        let rs = [record(DetectorEvent::D2, Polarization::H, PartyAction::RH)];
        assert_eq!(estimate_qber(&rs, 0.5, &mut rng), Err(Error::NoSiftedRounds));
        assert!(estimate_qber(&rs, 0.0, &mut rng).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = SessionConfig::new(ProtocolId::Noh09, 10, EveStrategy::NoEve, 1);
        assert!(cfg.validate().is_ok());
        cfg.rounds = 0;
        assert!(cfg.validate().is_err());
        let cfg = SessionConfig::new(ProtocolId::Scqkd, 10, EveStrategy::Hybrid { f: 0.1 }, 1);
        assert!(matches!(cfg.validate(), Err(Error::InvalidCombination { .. })));
    }
}
