//! Eve's channel unitaries.
//!
//! The noiseless attack acts on a channel mode and the probe:
//! `|α, ε0⟩ ↦ |α, ε_α⟩` for α ∈ {vac, H, V} and `|vac, ε_j⟩ ↦ |vac, ε_j⟩`.
//! On the remaining basis states it is completed as the involution that
//! swaps `|α, ε0⟩ ↔ |α, ε_α⟩`, so the unattack equals the attack. The
//! absorber level behaves like vacuum.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::error::{Error, Result};
use crate::protocols::optics::{c, E0, EH, EV, H, MODE_DIM, V};
use crate::qcore::SubsystemId;
use crate::{Matrix, PureState};

fn permutation(dim: usize, swaps: &[(usize, usize)]) -> Matrix {
    let mut target: Vec<usize> = (0..dim).collect();
    for &(a, b) in swaps {
        target.swap(a, b);
    }
    Matrix::from_fn(dim, |r, col| c(if target[col] == r { 1.0 } else { 0.0 }))
}

fn idx(mode_level: usize, probe_level: usize, probe_dim: usize) -> usize {
    mode_level * probe_dim + probe_level
}

/// Noiseless attack unitary on `[mode, probe]`.
pub fn noiseless_unitary(probe_dim: usize) -> Matrix {
    let mut swaps = vec![(idx(H, E0, probe_dim), idx(H, EH, probe_dim))];
    if probe_dim > EV {
        swaps.push((idx(V, E0, probe_dim), idx(V, EV, probe_dim)));
    }
    permutation(MODE_DIM * probe_dim, &swaps)
}

/// Flip variant: `|j, ε0⟩ ↦ |j̄, ε_j⟩`, completed as an involution.
pub fn flip_unitary() -> Matrix {
    permutation(
        MODE_DIM * 3,
        &[(idx(H, E0, 3), idx(V, EH, 3)), (idx(V, E0, 3), idx(H, EV, 3))],
    )
}

fn probe_dim(joint: &PureState) -> Result<usize> {
    let dim = joint
        .subsystems()
        .iter()
        .find(|s| s.id == SubsystemId::Probe)
        .ok_or(Error::UnknownSubsystem(SubsystemId::Probe))?
        .dim;
    if dim == 2 || dim == 3 {
        Ok(dim)
    } else {
        Err(Error::ProbeSupport)
    }
}

fn check_support(joint: &PureState, mode: SubsystemId, probe_dim: usize) -> Result<()> {
    if probe_dim == 3 {
        return Ok(());
    }
    // A two-level probe has no ε_V tag.
    let layout = joint.subsystems();
    let p = layout
        .iter()
        .position(|s| s.id == mode)
        .ok_or(Error::UnknownSubsystem(mode))?;
    let leaks = joint.amplitudes().iter().enumerate().any(|(i, a)| {
        a.norm_sqr() > 1e-24 && crate::qcore::split_index(layout, i)[p] == V
    });
    if leaks {
        Err(Error::ProbeSupport)
    } else {
        Ok(())
    }
}

/// Applies the noiseless attack on `mode` (usually the external arm).
pub fn noiseless_on(joint: &PureState, mode: SubsystemId) -> Result<PureState> {
    let dim = probe_dim(joint)?;
    check_support(joint, mode, dim)?;
    joint.apply(&[mode, SubsystemId::Probe], &noiseless_unitary(dim))
}

/// Onward-leg attack on the external arm.
pub fn noiseless_onward(joint: &PureState) -> Result<PureState> {
    noiseless_on(joint, SubsystemId::ModeB)
}

/// Return-leg unattack on the external arm: the inverse of [`noiseless_onward`].
pub fn noiseless_return(joint: &PureState) -> Result<PureState> {
    let dim = probe_dim(joint)?;
    check_support(joint, SubsystemId::ModeB, dim)?;
    joint.apply(
        &[SubsystemId::ModeB, SubsystemId::Probe],
        &noiseless_unitary(dim).adjoint(),
    )
}

/// Onward leg of the noisy-flip attack. With probability `f` the flip
/// variant is used; the returned flag tells the return hook which inverse
/// to apply.
pub fn noisy_flip_onward<R: Rng + ?Sized>(
    joint: &PureState,
    f: f64,
    rng: &mut R,
) -> Result<(PureState, bool)> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::InvalidProbability(f));
    }
    let flip = f > 0.0 && rng.random_bool(f);
    let out = if flip {
        flip_onward(joint)?
    } else {
        noiseless_onward(joint)?
    };
    Ok((out, flip))
}

pub fn flip_onward(joint: &PureState) -> Result<PureState> {
    if probe_dim(joint)? != 3 {
        return Err(Error::ProbeSupport);
    }
    joint.apply(&[SubsystemId::ModeB, SubsystemId::Probe], &flip_unitary())
}

pub fn flip_return(joint: &PureState) -> Result<PureState> {
    if probe_dim(joint)? != 3 {
        return Err(Error::ProbeSupport);
    }
    joint.apply(
        &[SubsystemId::ModeB, SubsystemId::Probe],
        &flip_unitary().adjoint(),
    )
}

/// Ping-pong message-mode attack on `[spin-B, probe]` (spin up = 0, down = 1).
///
/// Chosen so that `U† (Z ⊗ I) U` sends `|↓ε0⟩ ↦ |↓ε0⟩` and `|↑ε0⟩ ↦ −|↑ε1⟩`,
/// while the identity encoding returns the probe to `ε0`.
pub fn pingpong_unitary() -> Matrix {
    let s = FRAC_1_SQRT_2;
    // Columns: ↑ε0, ↑ε1, ↓ε0, ↓ε1.
    Matrix::from_real_rows(&[
        &[0.0, 0.0, 1.0, 0.0],
        &[s, -s, 0.0, 0.0],
        &[s, s, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

/// Largest deviation from identity of return ∘ onward for the noiseless attack.
pub fn inversion_defect(probe_dim: usize) -> f64 {
    let u = noiseless_unitary(probe_dim);
    u.adjoint().matmul(&u).max_abs_diff(&Matrix::identity(u.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::optics::{mode_a, mode_b, probe, VAC};

    fn eq1(j: usize) -> PureState {
        let s = FRAC_1_SQRT_2;
        PureState::from_terms(
            vec![mode_a(), mode_b(), probe(3)],
            &[(vec![VAC, j, E0], c(s)), (vec![j, VAC, E0], c(s))],
        )
        .unwrap()
    }

    #[test]
    fn unitaries_are_unitary() {
        assert!(noiseless_unitary(3).unitarity_defect() < 1e-15);
        assert!(noiseless_unitary(2).unitarity_defect() < 1e-15);
        assert!(flip_unitary().unitarity_defect() < 1e-15);
        assert!(pingpong_unitary().unitarity_defect() < 1e-15);
        assert!(inversion_defect(3) < 1e-15);
    }

    #[test]
    fn onward_produces_tagged_state() {
        let s = FRAC_1_SQRT_2;
        for j in [H, V] {
            let out = noiseless_onward(&eq1(j)).unwrap();
            let tag = if j == H { EH } else { EV };
            let expected = PureState::from_terms(
                vec![mode_a(), mode_b(), probe(3)],
                &[(vec![VAC, j, tag], c(s)), (vec![j, VAC, E0], c(s))],
            )
            .unwrap();
            assert!(out.max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn vacuum_leaves_probe_alone() {
        let vac = PureState::basis(vec![mode_b(), probe(3)], &[VAC, E0]).unwrap();
        assert_eq!(noiseless_onward(&vac).unwrap(), vac);
        let tagged = PureState::basis(vec![mode_b(), probe(3)], &[VAC, EV]).unwrap();
        assert_eq!(noiseless_onward(&tagged).unwrap(), tagged);
    }

    #[test]
    fn onward_then_return_is_identity() {
        let psi = eq1(V);
        let back = noiseless_return(&noiseless_onward(&psi).unwrap()).unwrap();
        assert!(back.max_abs_diff(&psi).unwrap() < 1e-12);
        let back = flip_return(&flip_onward(&psi).unwrap()).unwrap();
        assert!(back.max_abs_diff(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn flip_with_certainty_swaps_polarization() {
        let mut rng = rand::rng();
        let (out, flipped) = noisy_flip_onward(&eq1(H), 1.0, &mut rng).unwrap();
        assert!(flipped);
        assert!((out.amplitude(&[VAC, V, EH]).re - FRAC_1_SQRT_2).abs() < 1e-12);
        let (out0, flipped0) = noisy_flip_onward(&eq1(H), 0.0, &mut rng).unwrap();
        assert!(!flipped0);
        assert_eq!(out0, noiseless_onward(&eq1(H)).unwrap());
    }

    #[test]
    fn qubit_probe_rejects_vertical_photon() {
        let psi = PureState::basis(vec![mode_b(), probe(2)], &[V, E0]).unwrap();
        assert_eq!(noiseless_onward(&psi), Err(Error::ProbeSupport));
    }
}
