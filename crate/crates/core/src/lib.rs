//! Simulation core for a four-level spin-valley quantum battery: dense
//! complex matrices with a Hermitian eigensolver, the battery Hamiltonian and
//! charging pulse, a Lindblad integrator, and energy/ergotropy observables.

pub mod density;
pub mod dynamics;
pub mod error;
pub mod matrix;
pub mod model;
pub mod observables;
pub mod tolerances;

pub use density::DensityMatrix;
pub use dynamics::{
    charge, collapse_operator, evaluate_rate, integrate, lindblad_rhs, run_two_phase, ChannelKind,
    ChannelSpec, Diagnostics, HamiltonianSource, IntegratorConfig, RateProfile, Snapshot,
    TrajectoryRecord, TwoPhaseConfig, TwoPhaseOutcome,
};
pub use error::{Error, Result};
pub use matrix::{hermitian_eigen, Complex, ComplexMatrix, EigenDecomposition};
pub use model::{build_h0, closed_form_spectrum, ground_state, ModelParams, DIM};
pub use observables::{
    energy, ergotropy, l1_coherence, passive_state, purity_fidelity, ObservableSet, PassiveState,
};
