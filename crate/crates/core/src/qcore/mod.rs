//! Small-dimension complex linear algebra and quantum-information measures.

mod eigen;
mod matrix;
mod measures;
mod scalar;
mod state;

pub use eigen::hermitian_eigenvalues;
pub use matrix::Matrix;
pub use measures::{
    binary_entropy, eigenvalues, helstrom_guess, holevo_chi, shannon_entropy, trace_distance,
    von_neumann_entropy, Discrimination, EnsembleMember, ProbeEnsemble,
};
pub use scalar::{Real, C};
pub use state::{
    join_index, split_index, MixedState, PureState, Subsystem, SubsystemId, DIMENSION_BUDGET,
};
