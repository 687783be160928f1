//! Simulation and security analysis of counterfactual quantum key
//! distribution under noiseless probe attacks.
//!
//! The linear algebra in [`qcore`] is generic over the real scalar; the
//! protocol, attack and analysis layers work in double precision through
//! the aliases below.

pub mod error;
pub mod analysis;
pub mod attacks;
pub mod cli;
pub mod protocols;
pub mod qcore;

pub use error::{Error, Result};

/// Double-precision pure state.
pub type PureState = qcore::PureState<f64>;
/// Double-precision density operator.
pub type MixedState = qcore::MixedState<f64>;
/// Double-precision dense matrix.
pub type Matrix = qcore::Matrix<f64>;
/// Double-precision classical-quantum ensemble.
pub type ProbeEnsemble = qcore::ProbeEnsemble<f64>;
/// Double-precision complex number.
pub type Complex = qcore::C<f64>;
