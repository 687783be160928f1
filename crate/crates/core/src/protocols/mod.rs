//! Round-level protocol models and the Monte Carlo session runner.

mod cascade;
mod noh09;
pub mod optics;
mod pingpong;
mod round;
mod scqkd;
mod session;
mod types;

pub use cascade::{cascade_round, evolve as cascade_evolution, prepare as cascade_prepare};
pub use noh09::{
    bb84mod_round, evolve as michelson_evolution, noh09_distribution, noh09_round,
    prepare as michelson_prepare,
};
pub use pingpong::{phi as pingpong_phi, pingpong_message, PingPongOutcome};
pub use round::Evolution;
pub use scqkd::{guoshi_evolution, guoshi_round, scqkd_evolution, scqkd_round};
pub use session::{
    estimate_qber, run_records, run_round, run_session, run_session_with_workers, sift, summarize,
    SessionConfig, SessionStats, DEFAULT_SEED,
};
pub use types::{
    DetectorEvent, EveRecord, PartyAction, Polarization, ProtocolId, RoundRecord, SignalState,
};
