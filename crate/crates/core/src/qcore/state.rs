//! Pure and mixed states over labelled subsystems.
//!
//! Composite indices are row-major over the subsystem list: the first
//! subsystem is the most significant digit. States are immutable values;
//! every operation returns a new state.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{re, Real, C};
use crate::error::{Error, Result};

/// Largest composite dimension any state may have.
pub const DIMENSION_BUDGET: usize = 4096;

/// Identity of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubsystemId {
    /// Internal (Alice-side) interferometer arm.
    ModeA,
    /// External arm travelling to Bob.
    ModeB,
    /// Eve's probe.
    Probe,
    /// Alice's retained arms of a beam-splitter cascade, single-photon encoded.
    Arms,
    SpinA,
    SpinB,
    /// Output port of the recombining beam splitter.
    Port,
    /// Polarization of the detected photon.
    Polarization,
}

impl fmt::Display for SubsystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SubsystemId::ModeA => "mode-A",
            SubsystemId::ModeB => "mode-B",
            SubsystemId::Probe => "probe-E",
            SubsystemId::Arms => "cascade-arms",
            SubsystemId::SpinA => "spin-A",
            SubsystemId::SpinB => "spin-B",
            SubsystemId::Port => "port",
            SubsystemId::Polarization => "polarization",
        };
        f.write_str(name)
    }
}

/// A tensor factor with fixed dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subsystem {
    pub id: SubsystemId,
    pub dim: usize,
}

impl Subsystem {
    pub const fn new(id: SubsystemId, dim: usize) -> Self {
        Self { id, dim }
    }
}

fn composite_dim(subsystems: &[Subsystem]) -> Result<usize> {
    let mut seen = Vec::with_capacity(subsystems.len());
    let mut total: usize = 1;
    for s in subsystems {
        if seen.contains(&s.id) {
            return Err(Error::OverlappingSubsystems(s.id));
        }
        seen.push(s.id);
        total = total.saturating_mul(s.dim);
        if total > DIMENSION_BUDGET {
            return Err(Error::DimensionBudget(total, DIMENSION_BUDGET));
        }
    }
    Ok(total)
}

fn position(subsystems: &[Subsystem], id: SubsystemId) -> Result<usize> {
    subsystems
        .iter()
        .position(|s| s.id == id)
        .ok_or(Error::UnknownSubsystem(id))
}

/// Composite index → per-subsystem levels.
pub fn split_index(subsystems: &[Subsystem], mut index: usize) -> Vec<usize> {
    let mut levels = vec![0; subsystems.len()];
    for (slot, s) in levels.iter_mut().zip(subsystems).rev() {
        *slot = index % s.dim;
        index /= s.dim;
    }
    levels
}

/// Per-subsystem levels → composite index.
pub fn join_index(subsystems: &[Subsystem], levels: &[usize]) -> usize {
    debug_assert_eq!(subsystems.len(), levels.len());
    subsystems
        .iter()
        .zip(levels)
        .fold(0, |acc, (s, &l)| {
            debug_assert!(l < s.dim, "level {l} out of range for {}", s.id);
            acc * s.dim + l
        })
}

/// Normalised state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    subsystems: Vec<Subsystem>,
    amps: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(subsystems: Vec<Subsystem>, amps: Vec<C<T>>) -> Result<Self> {
        let dim = composite_dim(&subsystems)?;
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                got: amps.len(),
                expected: dim,
            });
        }
        let norm2 = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if (norm2 - T::one()).abs() > T::construct_tol() {
            return Err(Error::NotNormalized(norm2.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { subsystems, amps })
    }

    /// Computational basis state with the given levels.
    pub fn basis(subsystems: Vec<Subsystem>, levels: &[usize]) -> Result<Self> {
        Self::from_terms(subsystems, &[(levels.to_vec(), re(T::one()))])
    }

    /// Superposition `Σ amp |levels⟩`; the result must be normalised.
    pub fn from_terms(subsystems: Vec<Subsystem>, terms: &[(Vec<usize>, C<T>)]) -> Result<Self> {
        let dim = composite_dim(&subsystems)?;
        let mut amps = vec![C::zero(); dim];
        for (levels, amp) in terms {
            if levels.len() != subsystems.len() {
                return Err(Error::ShapeMismatch);
            }
            for (l, s) in levels.iter().zip(&subsystems) {
                if *l >= s.dim {
                    return Err(Error::InvalidParameter(format!(
                        "level {l} out of range for {}",
                        s.id
                    )));
                }
            }
            amps[join_index(&subsystems, levels)] += *amp;
        }
        Self::new(subsystems, amps)
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, levels: &[usize]) -> C<T> {
        self.amps[join_index(&self.subsystems, levels)]
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Kronecker product; subsystem lists are concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if let Some(s) = other
            .subsystems
            .iter()
            .find(|s| self.subsystems.iter().any(|t| t.id == s.id))
        {
            return Err(Error::OverlappingSubsystems(s.id));
        }
        let mut subsystems = self.subsystems.clone();
        subsystems.extend_from_slice(&other.subsystems);
        composite_dim(&subsystems)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| *a * *b))
            .collect();
        Self::new(subsystems, amps)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> MixedState<T> {
        MixedState {
            subsystems: self.subsystems.clone(),
            matrix: Matrix::outer(&self.amps, &self.amps),
        }
    }

    /// Applies `op` to the listed subsystems (in the listed order), identity
    /// elsewhere. The operator must preserve the norm of this state.
    pub fn apply(&self, targets: &[SubsystemId], op: &Matrix<T>) -> Result<Self> {
        let positions = targets
            .iter()
            .map(|id| position(&self.subsystems, *id))
            .collect::<Result<Vec<_>>>()?;
        let local_dims: Vec<Subsystem> = positions.iter().map(|&p| self.subsystems[p]).collect();
        let local_dim: usize = local_dims.iter().map(|s| s.dim).product();
        if local_dim != op.dim() {
            return Err(Error::ShapeMismatch);
        }
        let mut out = vec![C::zero(); self.amps.len()];
        for (index, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let mut levels = split_index(&self.subsystems, index);
            let col = join_index(
                &local_dims,
                &positions.iter().map(|&p| levels[p]).collect::<Vec<_>>(),
            );
            for row in 0..local_dim {
                let entry = op[(row, col)];
                if entry.is_zero() {
                    continue;
                }
                let row_levels = split_index(&local_dims, row);
                for (&p, &l) in positions.iter().zip(&row_levels) {
                    levels[p] = l;
                }
                out[join_index(&self.subsystems, &levels)] += entry * *amp;
            }
        }
        Self::new(self.subsystems.clone(), out)
    }

    /// Maps every basis state through `f`, which receives and rewrites the
    /// level tuple in place. The map must be injective on the support.
    pub fn map_basis(&self, mut f: impl FnMut(&mut [usize])) -> Result<Self> {
        let mut out = vec![C::zero(); self.amps.len()];
        for (index, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let mut levels = split_index(&self.subsystems, index);
            f(&mut levels);
            out[join_index(&self.subsystems, &levels)] += *amp;
        }
        Self::new(self.subsystems.clone(), out)
    }

    /// Rebuilds the state on a new subsystem list; `f` maps old levels to new
    /// levels. Used for beam-splitter port maps and relabelings.
    pub fn reshape(
        &self,
        subsystems: Vec<Subsystem>,
        mut f: impl FnMut(&[usize]) -> Vec<(Vec<usize>, C<T>)>,
    ) -> Result<Self> {
        let dim = composite_dim(&subsystems)?;
        let mut out = vec![C::zero(); dim];
        for (index, amp) in self.amps.iter().enumerate() {
            if amp.is_zero() {
                continue;
            }
            let levels = split_index(&self.subsystems, index);
            for (new_levels, coeff) in f(&levels) {
                out[join_index(&subsystems, &new_levels)] += coeff * *amp;
            }
        }
        Self::new(subsystems, out)
    }

    /// Probability of finding `id` at `level`.
    pub fn probability(&self, id: SubsystemId, level: usize) -> Result<T> {
        let p = position(&self.subsystems, id)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| split_index(&self.subsystems, *i)[p] == level)
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr()))
    }

    /// Post-measurement state given `id` found at `level`.
    pub fn condition(&self, id: SubsystemId, level: usize) -> Result<Self> {
        let p = position(&self.subsystems, id)?;
        let prob = self.probability(id, level)?;
        if prob <= T::construct_tol() {
            return Err(Error::ZeroProbabilityEvent);
        }
        let k = T::one() / prob.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if split_index(&self.subsystems, i)[p] == level {
                    *a * k
                } else {
                    C::zero()
                }
            })
            .collect();
        Self::new(self.subsystems.clone(), amps)
    }

    /// Largest amplitude difference against a state with the same layout.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.subsystems != other.subsystems {
            return Err(Error::ShapeMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.subsystems != other.subsystems {
            return Err(Error::ShapeMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }
}

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState<T: Real> {
    subsystems: Vec<Subsystem>,
    matrix: Matrix<T>,
}

impl<T: Real> MixedState<T> {
    pub fn new(subsystems: Vec<Subsystem>, matrix: Matrix<T>) -> Result<Self> {
        let dim = composite_dim(&subsystems)?;
        if matrix.dim() != dim {
            return Err(Error::LengthMismatch {
                got: matrix.dim(),
                expected: dim,
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > T::construct_tol() {
            return Err(Error::NotHermitian(dev.to_f64().unwrap_or(f64::NAN)));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::construct_tol() || tr.im.abs() > T::construct_tol() {
            return Err(Error::InvalidTrace(tr.re.to_f64().unwrap_or(f64::NAN)));
        }
        let min = super::eigen::hermitian_eigenvalues(&matrix)?
            .last()
            .copied()
            .unwrap_or_else(T::zero);
        if min < -T::derived_tol() {
            return Err(Error::NotPositive(min.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { subsystems, matrix })
    }

    /// Diagonal state `Σ w_i |i⟩⟨i|` on a single subsystem.
    pub fn diagonal(subsystem: Subsystem, weights: &[f64]) -> Result<Self> {
        if weights.len() != subsystem.dim {
            return Err(Error::ShapeMismatch);
        }
        let w: Vec<T> = weights.iter().map(|&x| T::lit(x)).collect();
        Self::new(vec![subsystem], Matrix::diagonal(&w))
    }

    /// `(1/d) I`.
    pub fn maximally_mixed(subsystems: Vec<Subsystem>) -> Result<Self> {
        let dim = composite_dim(&subsystems)?;
        Self::new(
            subsystems,
            Matrix::identity(dim).scale(T::one() / T::from_count(dim)),
        )
    }

    /// Convex combination `Σ w_i ρ_i`.
    pub fn mixture(terms: &[(T, &MixedState<T>)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::ShapeMismatch)?.1;
        let mut acc = Matrix::zeros(first.dim());
        for (w, rho) in terms {
            if rho.subsystems != first.subsystems {
                return Err(Error::ShapeMismatch);
            }
            if *w < T::zero() {
                return Err(Error::InvalidProbability(w.to_f64().unwrap_or(f64::NAN)));
            }
            acc = acc.add(&rho.matrix.scale(*w));
        }
        Self::new(first.subsystems.clone(), acc)
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Population of each computational basis state.
    pub fn populations(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn purity(&self) -> T {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// Conjugation `U ρ U†` by a unitary on the full space.
    pub fn conjugate(&self, unitary: &Matrix<T>) -> Result<Self> {
        Self::new(
            self.subsystems.clone(),
            unitary.matmul(&self.matrix).matmul(&unitary.adjoint()),
        )
    }

    /// Reduced state on `keep`, in the order the subsystems appear in `self`.
    pub fn partial_trace(&self, keep: &[SubsystemId]) -> Result<Self> {
        for id in keep {
            position(&self.subsystems, *id)?;
        }
        let kept_pos: Vec<usize> = (0..self.subsystems.len())
            .filter(|&p| keep.contains(&self.subsystems[p].id))
            .collect();
        let kept: Vec<Subsystem> = kept_pos.iter().map(|&p| self.subsystems[p]).collect();
        let traced_pos: Vec<usize> = (0..self.subsystems.len())
            .filter(|p| !kept_pos.contains(p))
            .collect();
        let traced: Vec<Subsystem> = traced_pos.iter().map(|&p| self.subsystems[p]).collect();
        let kept_dim: usize = kept.iter().map(|s| s.dim).product();
        let traced_dim: usize = traced.iter().map(|s| s.dim).product();

        let full_index = |k: usize, t: usize| {
            let kl = split_index(&kept, k);
            let tl = split_index(&traced, t);
            let mut levels = vec![0; self.subsystems.len()];
            for (&p, &l) in kept_pos.iter().zip(&kl) {
                levels[p] = l;
            }
            for (&p, &l) in traced_pos.iter().zip(&tl) {
                levels[p] = l;
            }
            join_index(&self.subsystems, &levels)
        };

        let mut out = Matrix::zeros(kept_dim);
        for r in 0..kept_dim {
            for c in 0..kept_dim {
                let mut acc = C::zero();
                for t in 0..traced_dim {
                    acc += self.matrix[(full_index(r, t), full_index(c, t))];
                }
                out[(r, c)] = acc;
            }
        }
        Self::new(kept, out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.subsystems != other.subsystems {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.matrix.max_abs_diff(&other.matrix))
    }
}
