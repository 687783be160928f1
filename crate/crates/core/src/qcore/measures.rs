use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigenvalues;
use super::matrix::Matrix;
use super::scalar::Real;
use super::state::{MixedState, Subsystem};
use crate::error::{Error, Result};

/// Eigenvalues of a density operator, descending.
pub fn eigenvalues<T: Real>(rho: &MixedState<T>) -> Result<Vec<T>> {
    hermitian_eigenvalues(rho.matrix())
}

fn trace_norm<T: Real>(m: &Matrix<T>) -> Result<T> {
    Ok(hermitian_eigenvalues(m)?
        .into_iter()
        .fold(T::zero(), |acc, x| acc + x.abs()))
}

/// `½ ‖ρ − σ‖₁`.
pub fn trace_distance<T: Real>(rho: &MixedState<T>, sigma: &MixedState<T>) -> Result<T> {
    if rho.subsystems() != sigma.subsystems() {
        return Err(Error::ShapeMismatch);
    }
    let d = trace_norm(&rho.matrix().sub(sigma.matrix()))? * T::lit(0.5);
    Ok(d.min(T::one()).max(T::zero()))
}

/// Optimal two-state discrimination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrimination<T> {
    pub p_guess: T,
    /// `1 − p_guess`.
    pub error: T,
}

/// Helstrom success probability `½(1 + ‖p₀ρ₀ − p₁ρ₁‖₁)`.
pub fn helstrom_guess<T: Real>(
    rho0: &MixedState<T>,
    rho1: &MixedState<T>,
    prior0: T,
) -> Result<Discrimination<T>> {
    if !(T::zero()..=T::one()).contains(&prior0) {
        return Err(Error::InvalidProbability(prior0.to_f64().unwrap_or(f64::NAN)));
    }
    if rho0.subsystems() != rho1.subsystems() {
        return Err(Error::ShapeMismatch);
    }
    let prior1 = T::one() - prior0;
    let weighted = rho0.matrix().scale(prior0).sub(&rho1.matrix().scale(prior1));
    let p_guess = ((T::one() + trace_norm(&weighted)?) * T::lit(0.5)).min(T::one());
    Ok(Discrimination {
        p_guess,
        error: T::one() - p_guess,
    })
}

#[inline]
fn plogp<T: Real>(p: T) -> T {
    if p <= T::zero() {
        T::zero()
    } else {
        p * p.log2()
    }
}

/// Binary Shannon entropy in bits.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(Error::InvalidProbability(p.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(-(plogp(p) + plogp(T::one() - p)))
}

/// Shannon entropy of a distribution in bits.
pub fn shannon_entropy<T: Real>(probs: &[T]) -> T {
    -probs.iter().fold(T::zero(), |acc, &p| acc + plogp(p))
}

/// `−Tr ρ log₂ ρ`.
pub fn von_neumann_entropy<T: Real>(rho: &MixedState<T>) -> Result<T> {
    let ev = eigenvalues(rho)?;
    // Clip round-off negatives before taking logs.
    Ok(shannon_entropy(&ev.into_iter().map(|x| x.max(T::zero())).collect::<Vec<_>>()).max(T::zero()))
}

/// One member of a classical-quantum ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMember<T: Real> {
    /// Secret bit (or other classical label) this member encodes.
    pub label: u8,
    pub prior: T,
    pub state: MixedState<T>,
}

/// Labelled set of `(prior, state)` pairs sharing one subsystem layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeEnsemble<T: Real> {
    members: Vec<EnsembleMember<T>>,
}

impl<T: Real> ProbeEnsemble<T> {
    pub fn new(members: Vec<EnsembleMember<T>>) -> Result<Self> {
        let first = members.first().ok_or(Error::EnsembleSize { expected: 1, got: 0 })?;
        let layout = first.state.subsystems().to_vec();
        let mut total = T::zero();
        for m in &members {
            if m.state.subsystems() != layout.as_slice() {
                return Err(Error::ShapeMismatch);
            }
            if !(T::zero()..=T::one()).contains(&m.prior) {
                return Err(Error::InvalidProbability(m.prior.to_f64().unwrap_or(f64::NAN)));
            }
            total += m.prior;
        }
        if (total - T::one()).abs() > T::construct_tol() {
            return Err(Error::InvalidPriors(total.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { members })
    }

    /// Two states for bits 0 and 1 with equal priors.
    pub fn binary(rho0: MixedState<T>, rho1: MixedState<T>) -> Result<Self> {
        let half = T::lit(0.5);
        Self::new(vec![
            EnsembleMember { label: 0, prior: half, state: rho0 },
            EnsembleMember { label: 1, prior: half, state: rho1 },
        ])
    }

    pub fn members(&self) -> &[EnsembleMember<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        self.members[0].state.subsystems()
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn average(&self) -> Result<MixedState<T>> {
        let terms: Vec<(T, &MixedState<T>)> =
            self.members.iter().map(|m| (m.prior, &m.state)).collect();
        MixedState::mixture(&terms)
    }

    /// The two members of a binary ensemble, ordered by label.
    pub fn pair(&self) -> Result<(&EnsembleMember<T>, &EnsembleMember<T>)> {
        if self.members.len() != 2 {
            return Err(Error::EnsembleSize {
                expected: 2,
                got: self.members.len(),
            });
        }
        let (a, b) = (&self.members[0], &self.members[1]);
        Ok(if a.label <= b.label { (a, b) } else { (b, a) })
    }

    /// Largest matrix-entry difference against another ensemble, member by member.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch);
        }
        let mut worst = T::zero();
        for (a, b) in self.members.iter().zip(&other.members) {
            if a.label != b.label {
                return Err(Error::ShapeMismatch);
            }
            worst = worst
                .max((a.prior - b.prior).abs())
                .max(a.state.max_abs_diff(&b.state)?);
        }
        Ok(worst)
    }
}

/// Holevo quantity `S(Σ pᵢρᵢ) − Σ pᵢ S(ρᵢ)`.
pub fn holevo_chi<T: Real>(ens: &ProbeEnsemble<T>) -> Result<T> {
    let mut chi = von_neumann_entropy(&ens.average()?)?;
    for m in ens.members() {
        chi -= m.prior * von_neumann_entropy(&m.state)?;
    }
    Ok(chi.max(T::zero()))
}
