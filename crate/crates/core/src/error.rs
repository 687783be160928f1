use thiserror::Error;

use crate::qcore::SubsystemId;

/// Errors raised by state construction, protocol rounds and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("subsystem {0} appears in both operands")]
    OverlappingSubsystems(SubsystemId),

    #[error("unknown subsystem {0}")]
    UnknownSubsystem(SubsystemId),

    #[error("composite dimension {0} exceeds the budget of {1}")]
    DimensionBudget(usize, usize),

    #[error("amplitude vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (deviation {0})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0})")]
    NotPositive(f64),

    #[error("subsystem structures differ")]
    ShapeMismatch,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("ensemble priors sum to {0}, expected 1")]
    InvalidPriors(f64),

    #[error("ensemble must have {expected} members, got {got}")]
    EnsembleSize { expected: usize, got: usize },

    #[error("action {action} is not valid for protocol {protocol}")]
    WrongAction { protocol: String, action: String },

    #[error("attack {attack} cannot be combined with protocol {protocol}")]
    InvalidCombination { protocol: String, attack: String },

    #[error("probe state leaves the admissible support of the attack unitary")]
    ProbeSupport,

    #[error("conditioning event has zero probability")]
    ZeroProbabilityEvent,

    #[error("no sifted rounds available")]
    NoSiftedRounds,

    #[error("Z alphabet must be binary, got {0} symbols")]
    NonBinaryGuess(usize),

    #[error("Holevo quantity {0} exceeds one bit")]
    ChiTooLarge(f64),

    #[error("compression rate {0} yields an empty key")]
    EmptyKey(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
