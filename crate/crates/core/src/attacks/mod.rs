//! Eve's strategies: channel hooks, probe measurement and guess rules.

mod conditional;
mod guess;
mod hooks;
pub mod intercept;
mod strategy;

pub use conditional::{probe_conditional_states, residual_disturbance, Conditioning, Disturbance};
pub use guess::{measure_populations, measure_probe, GuessRule, ProbeOutcome};
pub use hooks::{
    flip_onward, flip_return, flip_unitary, inversion_defect, noiseless_on, noiseless_onward,
    noiseless_return, noiseless_unitary, noisy_flip_onward, pingpong_unitary,
};
pub use intercept::intercept_resend;
pub use strategy::{AttackKind, EveStrategy, LegPlan};
