//! Closed-form security metrics and published-figure reproduction.

mod bounds;
mod channel;
mod claims;
mod privacy;
mod report;

pub use bounds::{
    cascade_report, entropy_inverse, holevo_analysis, hybrid_analysis, hybrid_threshold,
    CascadeReport, HolevoAnalysis, HybridPoint, HybridThreshold,
};
pub use channel::{
    collision_probability, discrimination_report, guess_channel, guess_channel_record, key_rate,
    mutual_information, record_collision_probability, DiscriminationReport, GuessChannel,
};
pub use claims::{
    amplitude_deviation, bb84mod_attacked_qber, claim_inventory, reproduce_all, reproduce_with, Claim,
    Provenance, SESSION_ROUNDS,
};
pub use privacy::{privacy_amplification, FinalKey};
pub use report::{security_report, SecurityReport};
