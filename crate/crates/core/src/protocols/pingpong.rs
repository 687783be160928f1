//! Message mode of the ping-pong protocol.
//!
//! Alice keeps spin A of `|Φ⟩ = (|↑↓⟩ + |↓↑⟩)/√2` and sends spin B to Bob,
//! who applies I (bit 0) or Z (bit 1) and returns it. Alice decodes with a
//! projective measurement onto `|Φ±⟩ = (|↑↓⟩ ± |↓↑⟩)/√2`.

use std::f64::consts::FRAC_1_SQRT_2;

use super::optics::c;
use crate::attacks::{pingpong_unitary, EveStrategy};
use crate::error::{Error, Result};
use crate::qcore::{Subsystem, SubsystemId};
use crate::{Matrix, PureState};

pub const UP: usize = 0;
pub const DOWN: usize = 1;

pub fn layout() -> Vec<Subsystem> {
    vec![
        Subsystem::new(SubsystemId::SpinA, 2),
        Subsystem::new(SubsystemId::SpinB, 2),
        Subsystem::new(SubsystemId::Probe, 2),
    ]
}

/// `|Φ±⟩ ⊗ |ε0⟩`.
pub fn phi(sign: f64) -> PureState {
    let s = FRAC_1_SQRT_2;
    PureState::from_terms(
        layout(),
        &[(vec![UP, DOWN, 0], c(s)), (vec![DOWN, UP, 0], c(sign * s))],
    )
    .expect("normalised")
}

/// Exact result of one message-mode transmission.
#[derive(Debug, Clone, PartialEq)]
pub struct PingPongOutcome {
    /// Tripartite state after Eve's return-leg unattack.
    pub final_state: PureState,
    /// Probability Alice decodes the wrong bit.
    pub error: f64,
}

pub fn pingpong_message(j: u8, eve: &EveStrategy) -> Result<PingPongOutcome> {
    if j > 1 {
        return Err(Error::InvalidParameter(format!("bit must be 0 or 1, got {j}")));
    }
    eve.validate(super::ProtocolId::Pingpong)?;
    let attacked = eve.is_active();
    let onward_targets = [SubsystemId::SpinB, SubsystemId::Probe];
    let mut state = phi(1.0);
    if attacked {
        state = state.apply(&onward_targets, &pingpong_unitary())?;
    }
    if j == 1 {
        let z = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        state = state.apply(&[SubsystemId::SpinB], &z)?;
    }
    if attacked {
        state = state.apply(&onward_targets, &pingpong_unitary().adjoint())?;
    }
    let rho_ab = state
        .to_density()
        .partial_trace(&[SubsystemId::SpinA, SubsystemId::SpinB])?;
    let target = phi(if j == 0 { 1.0 } else { -1.0 });
    let target_ab = target
        .to_density()
        .partial_trace(&[SubsystemId::SpinA, SubsystemId::SpinB])?;
    // ⟨Φ|ρ|Φ⟩ = Tr(ρ |Φ⟩⟨Φ|) for the pure target.
    let success = rho_ab.matrix().matmul(target_ab.matrix()).trace().re;
    Ok(PingPongOutcome {
        final_state: state,
        error: (1.0 - success).clamp(0.0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn honest_decoding_is_perfect() {
        for j in [0, 1] {
            assert!(pingpong_message(j, &EveStrategy::NoEve).unwrap().error < 1e-12);
        }
        assert!(pingpong_message(2, &EveStrategy::NoEve).is_err());
    }
}
