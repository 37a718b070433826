//! Annealing Hamiltonians packaged for the propagator, in rad/ns.

use super::builders::{effective_hamiltonian, lab_frame_hamiltonian, spin_lock_driver};
use super::device::DeviceParams;
use super::schedule::Schedule;
use crate::dynamics::{ScheduledHamiltonian, TimeDependentHamiltonian};
use crate::error::{Error, Result};
use crate::operators::{
    bond_sum, field_sum, weighted_field, Axis, CMatrix, LatticeGraph, OperatorSum, C64,
};

fn scaled(op: OperatorSum, factor: f64) -> Result<CMatrix> {
    Ok(op.compile()? * C64::new(factor, 0.0))
}

fn check_coeffs(coeffs: &[f64], graph: &LatticeGraph) -> Result<()> {
    if coeffs.len() != graph.n_sites() {
        return Err(Error::DimensionMismatch {
            expected: graph.n_sites(),
            actual: coeffs.len(),
        });
    }
    Ok(())
}

/// Driven flux-qubit register along a schedule, with nothing approximated.
pub struct LabFrameModel {
    params: DeviceParams,
    graph: LatticeGraph,
    coeffs: Vec<f64>,
    schedule: Schedule,
    inner: ScheduledHamiltonian,
}

impl LabFrameModel {
    pub fn new(
        params: &DeviceParams,
        graph: &LatticeGraph,
        coeffs: &[f64],
        schedule: &Schedule,
    ) -> Result<Self> {
        params.validate()?;
        check_coeffs(coeffs, graph)?;
        let n = graph.n_sites();
        let (qubit, coupling) = (
            params.unit_convention.qubit_factor(),
            params.unit_convention.coupling_factor(),
        );
        let omega = params.angular_omega();
        let bias = field_sum(n, Axis::Z).scale(0.5 * params.epsilon)
            + field_sum(n, Axis::X).scale(0.5 * params.delta_g);
        let (s1, s2) = (*schedule, *schedule);
        let inner = ScheduledHamiltonian::new(1 << n)
            .with_term(scaled(bias, qubit)?, |_| 1.0)
            .with_term(scaled(bond_sum(graph, Axis::Z), coupling)?, move |t| {
                s1.g(t)
            })
            .with_term(
                scaled(weighted_field(coeffs, Axis::Y), coupling)?,
                move |t| s2.lambda(t) * (omega * t).cos(),
            );
        Ok(LabFrameModel {
            params: *params,
            graph: graph.clone(),
            coeffs: coeffs.to_vec(),
            schedule: *schedule,
            inner,
        })
    }

    pub fn params(&self) -> &DeviceParams {
        &self.params
    }

    /// The builder's matrix (GHz) at `t`, for cross-checks.
    pub fn ghz_matrix(&self, t: f64) -> Result<CMatrix> {
        let (lambda, g) = self.schedule.values(t);
        lab_frame_hamiltonian(&self.params, &self.graph, &self.coeffs, lambda, g, t)
    }
}

impl TimeDependentHamiltonian for LabFrameModel {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn matrix(&self, t: f64) -> CMatrix {
        self.inner.matrix(t)
    }
    fn apply_add(&self, t: f64, weight: f64, v: &[C64], out: &mut [C64]) {
        self.inner.apply_add(t, weight, v, out)
    }
    fn norm_bound(&self, t: f64) -> f64 {
        self.inner.norm_bound(t)
    }
}

/// Rotating-wave Hamiltonian along a schedule.
pub struct RotatingFrameModel {
    params: DeviceParams,
    graph: LatticeGraph,
    coeffs: Vec<f64>,
    schedule: Schedule,
    inner: ScheduledHamiltonian,
}

impl RotatingFrameModel {
    pub fn new(
        params: &DeviceParams,
        graph: &LatticeGraph,
        coeffs: &[f64],
        schedule: &Schedule,
    ) -> Result<Self> {
        params.validate()?;
        check_coeffs(coeffs, graph)?;
        let n = graph.n_sites();
        let (qubit, coupling) = (
            params.unit_convention.qubit_factor(),
            params.unit_convention.coupling_factor(),
        );
        let (zz, ff) = (params.zz_weight(), params.flip_flop_weight());
        let interaction = bond_sum(graph, Axis::Z).scale(zz)
            + bond_sum(graph, Axis::X).scale(0.5 * ff)
            + bond_sum(graph, Axis::Y).scale(0.5 * ff);
        let (s1, s2) = (*schedule, *schedule);
        let mut inner = ScheduledHamiltonian::new(1 << n)
            .with_term(scaled(spin_lock_driver(1.0, coeffs), coupling)?, move |t| {
                s1.lambda(t)
            })
            .with_term(scaled(interaction, coupling)?, move |t| s2.g(t));
        let detuning = params.detuning();
        if detuning != 0.0 {
            inner = inner.with_term(scaled(field_sum(n, Axis::Z), qubit)?, move |_| detuning);
        }
        Ok(RotatingFrameModel {
            params: *params,
            graph: graph.clone(),
            coeffs: coeffs.to_vec(),
            schedule: *schedule,
            inner,
        })
    }

    /// The builder's operator (GHz) at `t`, for cross-checks.
    pub fn ghz_operator(&self, t: f64) -> Result<OperatorSum> {
        let (lambda, g) = self.schedule.values(t);
        effective_hamiltonian(&self.params, &self.graph, &self.coeffs, lambda, g)
    }
}

impl TimeDependentHamiltonian for RotatingFrameModel {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn matrix(&self, t: f64) -> CMatrix {
        self.inner.matrix(t)
    }
    fn apply_add(&self, t: f64, weight: f64, v: &[C64], out: &mut [C64]) {
        self.inner.apply_add(t, weight, v, out)
    }
    fn norm_bound(&self, t: f64) -> f64 {
        self.inner.norm_bound(t)
    }
}

/// DC annealing `H(t) = (t/T) H_P + (1 − t/T) H_D`.
pub struct ConventionalModel {
    inner: ScheduledHamiltonian,
}

impl ConventionalModel {
    /// `factor` converts the GHz operators to rad/ns.
    pub fn new(
        problem: &OperatorSum,
        driver: &OperatorSum,
        total_time: f64,
        factor: f64,
    ) -> Result<Self> {
        if problem.n_qubits() != driver.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: problem.n_qubits(),
                actual: driver.n_qubits(),
            });
        }
        if !(total_time > 0.0) {
            return Err(Error::param(
                "T",
                format!("must be positive, got {total_time}"),
            ));
        }
        let inner = ScheduledHamiltonian::new(1 << problem.n_qubits())
            .with_term(scaled(problem.clone(), factor)?, move |t| t / total_time)
            .with_term(scaled(driver.clone(), factor)?, move |t| {
                1.0 - t / total_time
            });
        Ok(ConventionalModel { inner })
    }
}

impl TimeDependentHamiltonian for ConventionalModel {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn matrix(&self, t: f64) -> CMatrix {
        self.inner.matrix(t)
    }
    fn apply_add(&self, t: f64, weight: f64, v: &[C64], out: &mut [C64]) {
        self.inner.apply_add(t, weight, v, out)
    }
    fn norm_bound(&self, t: f64) -> f64 {
        self.inner.norm_bound(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{map_xxz_exact, schedule_linear, ScheduleDirection, UnitConvention};
    use crate::operators::square_lattice;

    #[test]
    fn models_match_builders() {
        let g = square_lattice(2, 2).unwrap();
        let c = [1.0, -0.4, 0.7, 1.3];
        for conv in [UnitConvention::Angular, UnitConvention::Cyclic] {
            let p = map_xxz_exact(-1.0, 0.7, 5.0)
                .unwrap()
                .with_lambda0(1.0)
                .with_unit_convention(conv);
            let s = schedule_linear(1.0, p.g, 50.0, ScheduleDirection::DriveOff).unwrap();
            let lab = LabFrameModel::new(&p, &g, &c, &s).unwrap();
            let rot = RotatingFrameModel::new(&p, &g, &c, &s).unwrap();
            for t in [0.0, 3.7, 25.0, 50.0] {
                let want = lab.ghz_matrix(t).unwrap() * C64::new(conv.coupling_factor(), 0.0);
                assert!((lab.matrix(t) - want).norm() < 1e-12);
                let want = rot.ghz_operator(t).unwrap().compile().unwrap()
                    * C64::new(conv.coupling_factor(), 0.0);
                assert!((rot.matrix(t) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cyclic_drive_scales_only_the_qubit_terms() {
        let g = square_lattice(1, 2).unwrap();
        let p = map_xxz_exact(-1.0, 1.0, 5.0)
            .unwrap()
            .with_unit_convention(UnitConvention::CyclicDrive);
        assert!((p.angular_omega() - 10.0 * std::f64::consts::PI).abs() < 1e-12);
        let s = schedule_linear(1.0, p.g, 50.0, ScheduleDirection::DriveOff).unwrap();
        let rot = RotatingFrameModel::new(&p, &g, &[1.0; 2], &s).unwrap();
        let xxz = crate::hamiltonians::xxz_hamiltonian(&crate::hamiltonians::XxzParams {
            j: -1.0,
            delta: 1.0,
            graph: g.clone(),
        });
        assert!((rot.matrix(50.0) - xxz.compile().unwrap()).norm() < 1e-12);
        let lab = LabFrameModel::new(&p, &g, &[1.0; 2], &s).unwrap();
        let bias = (field_sum(2, Axis::Z).scale(0.5 * p.epsilon)
            + field_sum(2, Axis::X).scale(0.5 * p.delta_g))
        .compile()
        .unwrap();
        let want = bias * C64::new(std::f64::consts::TAU, 0.0)
            + bond_sum(&g, Axis::Z).compile().unwrap() * C64::new(p.g * 0.5, 0.0)
            + weighted_field(&[1.0; 2], Axis::Y).compile().unwrap()
                * C64::new(0.5 * (p.angular_omega() * 25.0).cos(), 0.0);
        assert!((lab.matrix(25.0) - want).norm() < 1e-12);
    }

    #[test]
    fn coefficient_length_checked() {
        let g = square_lattice(1, 3).unwrap();
        let p = map_xxz_exact(1.0, 1.0, 2.0).unwrap();
        let s = schedule_linear(1.0, p.g, 10.0, ScheduleDirection::DriveOff).unwrap();
        assert!(LabFrameModel::new(&p, &g, &[1.0; 2], &s).is_err());
        assert!(RotatingFrameModel::new(&p, &g, &[1.0; 4], &s).is_err());
    }
}
