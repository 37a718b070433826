//! Schrödinger propagation, spectra, ground spaces and fidelities.

mod fidelity;
mod frame;
mod hamiltonian;
mod propagate;
mod spectrum;
mod state;

pub use fidelity::fidelity;
pub use frame::{frame_map, RotatingFrame};
pub use hamiltonian::{
    FnHamiltonian, ScheduledHamiltonian, SparseOperator, TimeDependentHamiltonian,
};
pub use propagate::{
    evolve, propagate, ExpKernel, Method, PropagationSettings, SolverDiagnostics, Trajectory,
    RK4_DRIFT_TOL,
};
pub use spectrum::{
    expm_hermitian, ground_space, hermitian_eigen, spectral_flow, Eigensystem, GroundSpace,
    SpectralFlow, DEFAULT_DEGENERACY_TOL,
};
pub use state::{QuantumState, NORM_TOL};
