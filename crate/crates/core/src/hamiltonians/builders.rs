use serde::{Deserialize, Serialize};

use super::device::DeviceParams;
use crate::error::{Error, Result};
use crate::operators::{
    bond_sum, field_sum, global_rotation, weighted_field, Axis, CMatrix, LatticeGraph, OperatorSum,
    PauliTerm,
};

/// Anisotropic Heisenberg problem `J Σ_{⟨j,k⟩} (XX + YY + Δ ZZ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XxzParams {
    pub j: f64,
    pub delta: f64,
    pub graph: LatticeGraph,
}

pub fn xxz_hamiltonian(p: &XxzParams) -> OperatorSum {
    let n = p.graph.n_sites();
    let mut op = OperatorSum::zero(n);
    for &(a, b) in p.graph.bonds() {
        for (axis, w) in [(Axis::X, 1.0), (Axis::Y, 1.0), (Axis::Z, p.delta)] {
            op.push(PauliTerm::pair(p.j * w, (a, axis), (b, axis)))
                .expect("graph bonds are in range");
        }
    }
    op
}

fn check_coeffs(coeffs: &[f64], n_sites: usize) -> Result<()> {
    if coeffs.len() != n_sites {
        return Err(Error::DimensionMismatch {
            expected: n_sites,
            actual: coeffs.len(),
        });
    }
    if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
        return Err(Error::param(
            "coeffs",
            format!("non-finite drive coefficient {c}"),
        ));
    }
    Ok(())
}

/// DC transverse-field driver `−Σ_j c_j σ_j^axis`.
pub fn driver_hamiltonian(coeffs: &[f64], axis: Axis, n_sites: usize) -> Result<OperatorSum> {
    check_coeffs(coeffs, n_sites)?;
    Ok(-weighted_field(coeffs, axis))
}

/// Rotating-frame microwave driver `(λ/2) Σ_j c_j Y_j`.
pub fn spin_lock_driver(lambda: f64, coeffs: &[f64]) -> OperatorSum {
    let scaled: Vec<f64> = coeffs.iter().map(|c| 0.5 * lambda * c).collect();
    weighted_field(&scaled, Axis::Y)
}

/// `s H_P + (1 − s)(−B Σ_j X_j)`.
pub fn conventional_qa_hamiltonian(h_p: &OperatorSum, b: f64, s: f64) -> Result<OperatorSum> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::param("s", format!("must lie in [0, 1], got {s}")));
    }
    let n = h_p.n_qubits();
    let driver = -field_sum(n, Axis::X).scale(b);
    Ok(h_p.clone().scale(s) + driver.scale(1.0 - s))
}

/// Lab-frame flux-qubit register at time `t` (ns):
/// `(ε/2) ΣZ + (Δ_G/2) ΣX + λ cos(ωt) Σ c_j Y_j + g Σ_{bonds} ZZ`.
///
/// `lambda_t` and `g_t` are the schedule values at `t`; the phase `ωt` follows
/// the unit convention of `p`. Coefficients are in GHz.
pub fn lab_frame_operator(
    p: &DeviceParams,
    graph: &LatticeGraph,
    coeffs: &[f64],
    lambda_t: f64,
    g_t: f64,
    t: f64,
) -> Result<OperatorSum> {
    let n = graph.n_sites();
    check_coeffs(coeffs, n)?;
    let drive = lambda_t * (p.angular_omega() * t).cos();
    let op = field_sum(n, Axis::Z).scale(0.5 * p.epsilon)
        + field_sum(n, Axis::X).scale(0.5 * p.delta_g)
        + weighted_field(coeffs, Axis::Y).scale(drive)
        + bond_sum(graph, Axis::Z).scale(g_t);
    Ok(op)
}

pub fn lab_frame_hamiltonian(
    p: &DeviceParams,
    graph: &LatticeGraph,
    coeffs: &[f64],
    lambda_t: f64,
    g_t: f64,
    t: f64,
) -> Result<CMatrix> {
    lab_frame_operator(p, graph, coeffs, lambda_t, g_t, t)?.compile()
}

/// `U_y = exp(−i (θ/2) Σ Y)`, the rotation carrying the (ε, Δ_G) bias onto z.
///
/// The half angle is the physical rotation by θ on the Bloch sphere.
pub fn frame_rotation(p: &DeviceParams, n: usize) -> Result<CMatrix> {
    global_rotation(Axis::Y, 0.5 * p.mixing_angle(), n)
}

/// `U_y† H U_y` with the transverse bias rotated away.
pub fn rotated_hamiltonian(
    p: &DeviceParams,
    graph: &LatticeGraph,
    coeffs: &[f64],
    lambda_t: f64,
    g_t: f64,
    t: f64,
) -> Result<CMatrix> {
    let h = lab_frame_hamiltonian(p, graph, coeffs, lambda_t, g_t, t)?;
    let u = frame_rotation(p, graph.n_sites())?;
    Ok(u.adjoint() * h * u)
}

/// Rotating-wave Hamiltonian in the frame of the drive:
/// `(λ/2) Σ c_j Y_j + δω ΣZ + g Σ [cos²θ ZZ + sin²θ (σ+σ− + σ−σ+)]`.
pub fn effective_hamiltonian(
    p: &DeviceParams,
    graph: &LatticeGraph,
    coeffs: &[f64],
    lambda_t: f64,
    g_t: f64,
) -> Result<OperatorSum> {
    let n = graph.n_sites();
    check_coeffs(coeffs, n)?;
    let (zz, ff) = (g_t * p.zz_weight(), g_t * p.flip_flop_weight());
    let mut op = spin_lock_driver(lambda_t, coeffs) + field_sum(n, Axis::Z).scale(p.detuning());
    for &(a, b) in graph.bonds() {
        op.push(PauliTerm::pair(zz, (a, Axis::Z), (b, Axis::Z)))?;
        // σ+σ− + σ−σ+ = (XX + YY)/2
        op.push(PauliTerm::pair(0.5 * ff, (a, Axis::X), (b, Axis::X)))?;
        op.push(PauliTerm::pair(0.5 * ff, (a, Axis::Y), (b, Axis::Y)))?;
    }
    Ok(op)
}

/// Coefficient of a Pauli string in a dense operator, `Tr(P M) / 2^n`.
pub fn pauli_coefficient(
    m: &CMatrix,
    n: usize,
    factors: &[(usize, Axis)],
) -> Result<num_complex::Complex64> {
    let p =
        OperatorSum::from_terms(n, [PauliTerm::new(1.0, factors.iter().copied())?])?.compile()?;
    if p.nrows() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: p.nrows(),
            actual: m.nrows(),
        });
    }
    Ok((p * m).trace() / (m.nrows() as f64))
}
