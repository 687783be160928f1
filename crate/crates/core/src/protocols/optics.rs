//! Lossless single-photon interferometer model.
//!
//! Each optical mode has levels vacuum, H, V and `ABSORBED`; the last one
//! marks a photon removed from the mode into a blocking detector, so a
//! block is an isometry on the one-photon subspace instead of a collapse.
//! The recombining beam splitter sends internal amplitude `a` and external
//! amplitude `b` to `D1 = (a − b)/√2` and `D2 = (a + b)/√2`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_traits::Zero;

use super::types::DetectorEvent;
use crate::error::Result;
use crate::qcore::{Subsystem, SubsystemId};
use crate::{Complex, Matrix, MixedState, PureState};

pub const VAC: usize = 0;
pub const H: usize = 1;
pub const V: usize = 2;
pub const ABSORBED: usize = 3;
pub const MODE_DIM: usize = 4;

pub const E0: usize = 0;
pub const EH: usize = 1;
pub const EV: usize = 2;

pub const PORT_D1: usize = 0;
pub const PORT_D2: usize = 1;
pub const PORT_DB: usize = 2;
pub const PORT_DA: usize = 3;
/// First of the unmonitored ports (inner cascade beam splitters).
pub const PORT_LOST: usize = 4;

pub fn mode_a() -> Subsystem {
    Subsystem::new(SubsystemId::ModeA, MODE_DIM)
}

pub fn mode_b() -> Subsystem {
    Subsystem::new(SubsystemId::ModeB, MODE_DIM)
}

pub fn probe(dim: usize) -> Subsystem {
    Subsystem::new(SubsystemId::Probe, dim)
}

pub fn polarization() -> Subsystem {
    Subsystem::new(SubsystemId::Polarization, 3)
}

pub fn port(dim: usize) -> Subsystem {
    Subsystem::new(SubsystemId::Port, dim)
}

pub(crate) fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Single-mode unitary moving the `blocked` one-photon state into the
/// absorber level (and back), identity on the orthogonal complement.
pub fn block_operator(blocked: [f64; 4]) -> Matrix {
    let mut b = blocked;
    b[ABSORBED] = 0.0;
    let x = [0.0, 0.0, 0.0, 1.0];
    Matrix::from_fn(MODE_DIM, |r, col| {
        let id = if r == col { 1.0 } else { 0.0 };
        c(id - b[r] * b[col] - x[r] * x[col] + x[r] * b[col] + b[r] * x[col])
    })
}

/// Maps the photon amplitudes of modes A and B through the recombining
/// beam splitter onto `[Port, Polarization, Probe]`.
pub fn michelson_output(state: &PureState, probe_dim: usize) -> Result<PureState> {
    let layout = state.subsystems().to_vec();
    let pos = |id| layout.iter().position(|s| s.id == id).expect("subsystem present");
    let (ia, ib, ie) = (pos(SubsystemId::ModeA), pos(SubsystemId::ModeB), pos(SubsystemId::Probe));
    let s = FRAC_1_SQRT_2;
    state.reshape(vec![port(PORT_LOST), polarization(), probe(probe_dim)], |lv| {
        let (la, lb, le) = (lv[ia], lv[ib], lv[ie]);
        match (la, lb) {
            (H | V, VAC) => vec![(vec![PORT_D1, la, le], c(s)), (vec![PORT_D2, la, le], c(s))],
            (VAC, H | V) => vec![(vec![PORT_D1, lb, le], c(-s)), (vec![PORT_D2, lb, le], c(s))],
            (VAC, ABSORBED) => vec![(vec![PORT_DB, VAC, le], c(1.0))],
            (ABSORBED, VAC) => vec![(vec![PORT_DA, VAC, le], c(1.0))],
            other => unreachable!("not a one-photon configuration: {other:?}"),
        }
    })
}

pub fn port_event(port_level: usize) -> DetectorEvent {
    match port_level {
        PORT_D1 => DetectorEvent::D1,
        PORT_D2 => DetectorEvent::D2,
        PORT_DB => DetectorEvent::DB,
        PORT_DA => DetectorEvent::DA,
        _ => DetectorEvent::None,
    }
}

/// Exact distribution over detector events of a `[Port, Polarization, Probe]` state.
pub fn event_distribution(detection: &PureState) -> Vec<(DetectorEvent, f64)> {
    let ports = detection.subsystems()[0].dim;
    let mut out: Vec<(DetectorEvent, f64)> = Vec::new();
    for level in 0..ports {
        let p = detection
            .probability(SubsystemId::Port, level)
            .expect("port subsystem");
        let ev = port_event(level);
        match out.iter_mut().find(|(e, _)| *e == ev) {
            Some((_, acc)) => *acc += p,
            None => out.push((ev, p)),
        }
    }
    out.retain(|(_, p)| !p.is_zero());
    out.sort_by_key(|(e, _)| *e);
    out
}

/// Probability of one event in a detection distribution.
pub fn prob_of(dist: &[(DetectorEvent, f64)], event: DetectorEvent) -> f64 {
    dist.iter().find(|(e, _)| *e == event).map_or(0.0, |(_, p)| *p)
}

/// Probe state conditioned on a detector event (summing unmonitored ports).
pub fn probe_given_event(detection: &PureState, event: DetectorEvent) -> Result<MixedState> {
    let ports = detection.subsystems()[0].dim;
    let mut terms = Vec::new();
    for level in (0..ports).filter(|&l| port_event(l) == event) {
        let p = detection.probability(SubsystemId::Port, level)?;
        if p > 1e-15 {
            let reduced = detection
                .condition(SubsystemId::Port, level)?
                .to_density()
                .partial_trace(&[SubsystemId::Probe])?;
            terms.push((p, reduced));
        }
    }
    let total: f64 = terms.iter().map(|(p, _)| p).sum();
    if terms.is_empty() || total <= 1e-15 {
        return Err(crate::Error::ZeroProbabilityEvent);
    }
    let weighted: Vec<(f64, &MixedState)> = terms.iter().map(|(p, r)| (p / total, r)).collect();
    MixedState::mixture(&weighted)
}

/// Rewrites absorbed photons as vacuum in every optical mode, the way a
/// photon removed into a blocking detector is written as `|0⟩`. Only valid
/// when this map is injective on the support, which holds for one-photon
/// states with a single blocked arm.
pub fn absorbed_as_vacuum(state: &PureState) -> Result<PureState> {
    let modes: Vec<usize> = state
        .subsystems()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s.id, SubsystemId::ModeA | SubsystemId::ModeB))
        .map(|(i, _)| i)
        .collect();
    state.map_basis(|levels| {
        for &m in &modes {
            if levels[m] == ABSORBED {
                levels[m] = VAC;
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_operator_is_unitary_and_moves_photon() {
        let s = FRAC_1_SQRT_2;
        for blocked in [[0.0, 1.0, 0.0, 0.0], [0.0, s, -s, 0.0]] {
            let u = block_operator(blocked);
            assert!(u.unitarity_defect() < 1e-15);
            let moved = u.apply(&blocked.map(c));
            assert!((moved[ABSORBED].re - 1.0).abs() < 1e-15);
        }
    }
}
