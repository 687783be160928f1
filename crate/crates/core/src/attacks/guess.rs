use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MixedState;

/// Result of Eve's projective probe measurement in the `{ε0, εH, εV}` basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProbeOutcome {
    E0,
    EH,
    EV,
}

impl ProbeOutcome {
    pub fn from_level(level: usize) -> Self {
        match level {
            0 => ProbeOutcome::E0,
            1 => ProbeOutcome::EH,
            _ => ProbeOutcome::EV,
        }
    }

    pub fn level(self) -> usize {
        match self {
            ProbeOutcome::E0 => 0,
            ProbeOutcome::EH => 1,
            ProbeOutcome::EV => 2,
        }
    }
}

/// Post-processing from a probe outcome to Eve's binary guess `Z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuessRule {
    /// `ε_H ↦ 0`, `ε_V ↦ 1`, `ε0 ↦` fair coin (Noh09, cascade).
    TernaryCoin,
    /// `ε0 ↦ 0`, `ε_H ↦ 1` (SC-QKD, Guo-Shi).
    ZeroDefault,
}

impl GuessRule {
    /// `P(Z = 0)`, `P(Z = 1)` for a given outcome.
    pub fn z_distribution(self, outcome: ProbeOutcome) -> [f64; 2] {
        match (self, outcome) {
            (GuessRule::TernaryCoin, ProbeOutcome::E0) => [0.5, 0.5],
            (GuessRule::TernaryCoin, ProbeOutcome::EH) => [1.0, 0.0],
            (GuessRule::TernaryCoin, ProbeOutcome::EV) => [0.0, 1.0],
            (GuessRule::ZeroDefault, ProbeOutcome::E0) => [1.0, 0.0],
            (GuessRule::ZeroDefault, _) => [0.0, 1.0],
        }
    }

    /// Number of probe levels the rule measures.
    pub fn levels(self) -> usize {
        match self {
            GuessRule::TernaryCoin => 3,
            GuessRule::ZeroDefault => 2,
        }
    }

    pub fn guess<R: Rng + ?Sized>(self, outcome: ProbeOutcome, rng: &mut R) -> u8 {
        let [p0, _] = self.z_distribution(outcome);
        if p0 >= 1.0 {
            0
        } else if p0 <= 0.0 {
            1
        } else {
            u8::from(!rng.random_bool(p0))
        }
    }
}

/// Measures the probe in its level basis and applies the guess rule.
pub fn measure_probe<R: Rng + ?Sized>(
    probe: &MixedState,
    rule: GuessRule,
    rng: &mut R,
) -> Result<(ProbeOutcome, u8)> {
    measure_populations(&probe.populations(), rule, rng)
}

/// [`measure_probe`] given the probe's level populations.
pub fn measure_populations<R: Rng + ?Sized>(
    pops: &[f64],
    rule: GuessRule,
    rng: &mut R,
) -> Result<(ProbeOutcome, u8)> {
    if pops.len() > rule.levels() && pops[rule.levels()..].iter().any(|p| *p > 1e-12) {
        return Err(Error::ProbeSupport);
    }
    let mut u: f64 = rng.random();
    let mut level = pops.len() - 1;
    for (i, p) in pops.iter().enumerate() {
        if u < *p {
            level = i;
            break;
        }
        u -= p;
    }
    // Round-off may leave a sliver past the last populated level.
    while level > 0 && pops[level] <= 0.0 {
        level -= 1;
    }
    let outcome = ProbeOutcome::from_level(level);
    Ok((outcome, rule.guess(outcome, rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::optics::probe;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tagged_probe_gives_deterministic_guess() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let eh = MixedState::diagonal(probe(3), &[0.0, 1.0, 0.0]).unwrap();
        for _ in 0..50 {
            assert_eq!(measure_probe(&eh, GuessRule::TernaryCoin, &mut rng).unwrap(), (ProbeOutcome::EH, 0));
        }
    }

    #[test]
    fn untagged_probe_coin_vs_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e0 = MixedState::diagonal(probe(3), &[1.0, 0.0, 0.0]).unwrap();
        let ones: u32 = (0..4000)
            .map(|_| u32::from(measure_probe(&e0, GuessRule::TernaryCoin, &mut rng).unwrap().1))
            .sum();
        // Fair coin: 3σ = 95.
        assert!((ones as f64 - 2000.0).abs() < 95.0, "{ones}");
        let e0q = MixedState::diagonal(probe(2), &[1.0, 0.0]).unwrap();
        for _ in 0..50 {
            assert_eq!(measure_probe(&e0q, GuessRule::ZeroDefault, &mut rng).unwrap().1, 0);
        }
    }
}
