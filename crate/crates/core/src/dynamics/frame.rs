//! Lab frame ↔ rotating frame of the drive.

use nalgebra::DVector;

use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::hamiltonians::{frame_rotation, DeviceParams};
use crate::operators::{CMatrix, C64};

/// The composed frame change `ψ_rot = U(t)† U_y† ψ_lab` with
/// `U_y = exp(−i(θ/2)ΣY)` and `U(t) = exp(−i(ωt/2)ΣZ)`.
#[derive(Clone, Debug)]
pub struct RotatingFrame {
    n: usize,
    omega: f64,
    u_y: CMatrix,
    u_y_dag: CMatrix,
    /// `Σ_j Z_j` on each basis state.
    magnetization: Vec<f64>,
}

impl RotatingFrame {
    pub fn new(p: &DeviceParams, n: usize) -> Result<Self> {
        let u_y = frame_rotation(p, n)?;
        let magnetization = (0..1usize << n)
            .map(|k| n as f64 - 2.0 * k.count_ones() as f64)
            .collect();
        Ok(RotatingFrame {
            n,
            omega: p.angular_omega(),
            u_y_dag: u_y.adjoint(),
            u_y,
            magnetization,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    fn z_phase(&self, v: &mut DVector<C64>, t: f64, sign: f64) {
        let half = 0.5 * self.omega * t;
        for (z, m) in v.iter_mut().zip(&self.magnetization) {
            *z *= C64::from_polar(1.0, sign * half * m);
        }
    }

    /// Lab-frame state to the rotating frame at time `t`.
    pub fn to_rotating(&self, psi_lab: &QuantumState, t: f64) -> Result<QuantumState> {
        self.check(psi_lab)?;
        let mut v = &self.u_y_dag * psi_lab.amplitudes();
        self.z_phase(&mut v, t, 1.0);
        Ok(QuantumState::from_raw(v))
    }

    /// Inverse of [`RotatingFrame::to_rotating`].
    pub fn to_lab(&self, psi_rot: &QuantumState, t: f64) -> Result<QuantumState> {
        self.check(psi_rot)?;
        let mut v = psi_rot.amplitudes().clone();
        self.z_phase(&mut v, t, -1.0);
        Ok(QuantumState::from_raw(&self.u_y * v))
    }

    fn check(&self, psi: &QuantumState) -> Result<()> {
        if psi.dim() != 1 << self.n {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n,
                actual: psi.dim(),
            });
        }
        Ok(())
    }
}

/// One-off frame change of a lab-frame state; see [`RotatingFrame`].
pub fn frame_map(psi_lab: &QuantumState, p: &DeviceParams, t: f64) -> Result<QuantumState> {
    let n = psi_lab.dim().trailing_zeros() as usize;
    if 1usize << n != psi_lab.dim() {
        return Err(Error::param("psi_lab", "dimension is not a power of two"));
    }
    RotatingFrame::new(p, n)?.to_rotating(psi_lab, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{global_rotation, Axis};

    fn some_state(dim: usize) -> QuantumState {
        let v = DVector::from_fn(dim, |k, _| C64::new(1.0 + k as f64, 0.5 * k as f64 - 1.0));
        QuantumState::normalized(v).unwrap()
    }

    #[test]
    fn at_time_zero_only_the_y_rotation_acts() {
        let p = DeviceParams::new(0.8, 1.3, 0.0, 1.0, 3.0).unwrap();
        let psi = some_state(8);
        let got = frame_map(&psi, &p, 0.0).unwrap();
        let u_y = global_rotation(Axis::Y, 0.5 * p.mixing_angle(), 3).unwrap();
        let want = u_y.adjoint() * psi.amplitudes();
        assert!((got.amplitudes() - want).norm() < 1e-14);
    }

    #[test]
    fn without_gap_the_map_is_a_z_phase() {
        let p = DeviceParams::new(2.0, 0.0, 0.0, 1.0, 2.0).unwrap();
        let psi = some_state(4);
        let t = 0.83;
        let got = frame_map(&psi, &p, t).unwrap();
        let u = global_rotation(Axis::Z, -0.5 * p.omega * t, 2).unwrap();
        assert!((got.amplitudes() - u * psi.amplitudes()).norm() < 1e-14);
    }

    #[test]
    fn round_trip_and_norm() {
        let p = DeviceParams::new(1.1, 0.4, 0.0, 1.0, 5.0).unwrap();
        let frame = RotatingFrame::new(&p, 3).unwrap();
        let psi = some_state(8);
        let rot = frame.to_rotating(&psi, 17.3).unwrap();
        assert!((rot.norm() - 1.0).abs() < 1e-12);
        let back = frame.to_lab(&rot, 17.3).unwrap();
        assert!((back.amplitudes() - psi.amplitudes()).norm() < 1e-12);
    }
}
