//! Privacy amplification with a seeded Toeplitz hash.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalKey {
    pub bits: Vec<u8>,
    pub sifted_length: usize,
    pub rate: f64,
    pub seed: u64,
}

/// Compresses `bits` to `floor(len · rate)` bits with an `m × n` binary
/// Toeplitz matrix whose `n + m − 1` diagonals are drawn from `seed`.
pub fn privacy_amplification(bits: &[u8], rate: f64, seed: u64) -> Result<FinalKey> {
    if bits.is_empty() {
        return Err(Error::EmptyKey(rate));
    }
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidProbability(rate));
    }
    if let Some(&b) = bits.iter().find(|&&b| b > 1) {
        return Err(Error::InvalidParameter(format!("key bit {b} is not binary")));
    }
    let n = bits.len();
    let m = (n as f64 * rate).floor() as usize;
    if m == 0 {
        return Err(Error::EmptyKey(rate));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diagonals: Vec<u8> = (0..n + m - 1).map(|_| rng.random_range(0..2u8)).collect();
    let out = (0..m)
        .map(|i| {
            // Entry (i, j) is diagonals[i + n - 1 - j].
            bits.iter()
                .enumerate()
                .fold(0u8, |acc, (j, &b)| acc ^ (diagonals[i + n - 1 - j] & b))
        })
        .collect();
    Ok(FinalKey {
        bits: out,
        sifted_length: n,
        rate,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_determinism() {
        let bits: Vec<u8> = (0..1000).map(|i| (i * 7 % 3 == 0) as u8).collect();
        let k = privacy_amplification(&bits, 0.578072, 9).unwrap();
        assert_eq!(k.bits.len(), 578);
        assert_eq!(k, privacy_amplification(&bits, 0.578072, 9).unwrap());
        assert_eq!(privacy_amplification(&bits, 1.0, 9).unwrap().bits.len(), 1000);
        assert!(privacy_amplification(&bits, 0.0001, 9).is_err());
        assert!(privacy_amplification(&[], 0.5, 9).is_err());
    }

    #[test]
    fn hash_is_linear() {
        let a = [1, 0, 1, 1, 0, 0, 1, 0];
        let b = [0, 1, 1, 0, 1, 0, 0, 1];
        let ab: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let h = |v: &[u8]| privacy_amplification(v, 0.5, 3).unwrap().bits;
        let sum: Vec<u8> = h(&a).iter().zip(h(&b)).map(|(x, y)| x ^ y).collect();
        assert_eq!(h(&ab), sum);
    }
}
