use super::spectrum::GroundSpace;
use super::state::QuantumState;
use crate::error::{Error, Result};

/// Ground-space fidelity `F = Σ_n |⟨g_n|ψ⟩|²` of a pure state.
pub fn fidelity(psi: &QuantumState, gs: &GroundSpace) -> Result<f64> {
    if psi.dim() != gs.dim() {
        return Err(Error::DimensionMismatch {
            expected: gs.dim(),
            actual: psi.dim(),
        });
    }
    let f: f64 = gs
        .basis
        .iter()
        .map(|g| g.amplitudes().dotc(psi.amplitudes()).norm_sqr())
        .sum();
    // rounding can overshoot 1 by a few ulps
    Ok(f.clamp(0.0, 1.0))
}
