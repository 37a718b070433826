use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use super::config::{ExperimentConfig, Frame};
use crate::dynamics::{
    fidelity, ground_space, propagate, GroundSpace, PropagationSettings, QuantumState,
    RotatingFrame, SolverDiagnostics, TimeDependentHamiltonian, Trajectory,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    effective_hamiltonian, map_device, schedule_linear, spin_lock_driver, xxz_hamiltonian,
    DeviceParams, LabFrameModel, RotatingFrameModel, XxzParams,
};
use crate::operators::{LatticeGraph, OperatorSum};
use crate::symmetry::{scan_candidates, SymmetryReport, DEFAULT_COMMUTATION_TOL};

/// Everything needed to propagate one (case, ω, frame) point.
pub struct PreparedRun {
    pub omega: f64,
    pub frame: Frame,
    pub params: DeviceParams,
    pub hamiltonian: Box<dyn TimeDependentHamiltonian + Send>,
    /// Ground state of the t = 0 rotating-frame Hamiltonian, in this run's frame.
    pub initial: QuantumState,
    /// Ground space of the problem Hamiltonian (rotating frame).
    pub target: GroundSpace,
    pub rotating: RotatingFrame,
    pub settings: PropagationSettings,
}

impl PreparedRun {
    /// `ψ(t)` expressed in the rotating frame.
    pub fn to_rotating(&self, psi: &QuantumState, t: f64) -> Result<QuantumState> {
        match self.frame {
            Frame::Lab => self.rotating.to_rotating(psi, t),
            _ => Ok(psi.clone()),
        }
    }

    /// Propagates with the ground-space fidelity as the probe.
    pub fn run(&self) -> Result<Trajectory> {
        self.run_with_probe(|t, psi| fidelity(&self.to_rotating(psi, t)?, &self.target))
    }

    pub fn run_with_probe(
        &self,
        probe: impl Fn(f64, &QuantumState) -> Result<f64>,
    ) -> Result<Trajectory> {
        propagate(
            self.hamiltonian.as_ref(),
            &self.initial,
            &self.settings,
            probe,
        )
    }
}

/// The problem Hamiltonian of a config.
pub fn problem_hamiltonian(cfg: &ExperimentConfig) -> Result<OperatorSum> {
    Ok(xxz_hamiltonian(&XxzParams {
        j: cfg.problem.j,
        delta: cfg.problem.delta,
        graph: cfg.graph()?,
    }))
}

/// Step for `frame`: the configured override, else the frame's policy.
pub fn step_size(cfg: &ExperimentConfig, params: &DeviceParams, frame: Frame) -> f64 {
    let t = cfg.anneal.total_time;
    if let Some(dt) = cfg.solver.dt {
        return dt;
    }
    match frame {
        Frame::Lab => {
            let per_period = cfg.solver.steps_per_period as f64;
            t / (t * params.angular_omega() * per_period / (2.0 * PI)).ceil()
        }
        _ => t / cfg.solver.rotating_steps as f64,
    }
}

pub fn prepare_run(cfg: &ExperimentConfig, omega: f64, frame: Frame) -> Result<PreparedRun> {
    if frame == Frame::Both {
        return Err(Error::Config(
            "a single run needs frame lab or rotating-rwa".into(),
        ));
    }
    let graph = cfg.graph()?;
    let coeffs = cfg.drive_coefficients()?;
    let (j, delta, lambda0) = (cfg.problem.j, cfg.problem.delta, cfg.device.lambda0);
    let params = map_device(cfg.device.mapping, j, delta, omega)?
        .with_lambda0(lambda0)
        .with_unit_convention(cfg.device.unit_convention);
    let schedule = schedule_linear(
        lambda0,
        params.g,
        cfg.anneal.total_time,
        cfg.anneal.schedule_direction,
    )?;
    let (lambda_start, g_start) = schedule.values(0.0);
    let h0 = effective_hamiltonian(&params, &graph, &coeffs, lambda_start, g_start)?.compile()?;
    let start = ground_space(&h0, cfg.solver.degeneracy_tol)?;
    if start.degeneracy() > 1 {
        log::warn!(
            "{}: initial Hamiltonian has a {}-fold ground space, starting from its first basis vector",
            cfg.name,
            start.degeneracy()
        );
    }
    let rotating = RotatingFrame::new(&params, graph.n_sites())?;
    let (hamiltonian, initial): (Box<dyn TimeDependentHamiltonian + Send>, _) = match frame {
        Frame::Lab => (
            Box::new(LabFrameModel::new(&params, &graph, &coeffs, &schedule)?),
            rotating.to_lab(&start.basis[0], 0.0)?,
        ),
        _ => (
            Box::new(RotatingFrameModel::new(
                &params, &graph, &coeffs, &schedule,
            )?),
            start.basis[0].clone(),
        ),
    };
    let target = ground_space(
        &problem_hamiltonian(cfg)?.compile()?,
        cfg.solver.degeneracy_tol,
    )?;
    let settings = PropagationSettings::new(cfg.anneal.total_time, step_size(cfg, &params, frame))
        .with_method(cfg.solver.method)
        .with_kernel(cfg.solver.kernel)
        .with_samples(cfg.solver.samples);
    Ok(PreparedRun {
        omega,
        frame,
        params,
        hamiltonian,
        initial,
        target,
        rotating,
        settings,
    })
}

/// One propagated (case, ω, frame) point.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub case: String,
    pub frame: Frame,
    pub omega: f64,
    pub params: DeviceParams,
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
    pub final_fidelity: f64,
    pub degeneracy: usize,
    pub diagnostics: SolverDiagnostics,
    pub wall_time_s: f64,
}

impl RunRecord {
    /// File stem shared by the CSV of this run.
    pub fn stem(&self) -> String {
        format!("{}_{}_w{}", self.case, self.frame.name(), self.omega)
    }
}

fn frames(cfg: &ExperimentConfig) -> Vec<Frame> {
    match cfg.anneal.frame {
        Frame::Both => vec![Frame::Lab, Frame::RotatingRwa],
        f => vec![f],
    }
}

fn run_point(cfg: &ExperimentConfig, omega: f64, frame: Frame) -> Result<RunRecord> {
    let clock = Instant::now();
    let run = prepare_run(cfg, omega, frame)?;
    let trajectory = run.run()?;
    log::info!(
        "{} {} ω={omega}: F(T) = {:.6} after {} steps",
        cfg.name,
        frame.name(),
        trajectory.final_fidelity(),
        trajectory.diagnostics.steps
    );
    Ok(RunRecord {
        case: cfg.name.clone(),
        frame,
        omega,
        params: run.params,
        final_fidelity: trajectory.final_fidelity(),
        times: trajectory.times,
        fidelities: trajectory.fidelities,
        degeneracy: run.target.degeneracy(),
        diagnostics: trajectory.diagnostics,
        wall_time_s: clock.elapsed().as_secs_f64(),
    })
}

fn parallel_map<T: Send, R: Send>(
    workers: usize,
    items: Vec<T>,
    f: impl Fn(T) -> Result<R> + Sync + Send,
) -> Result<Vec<R>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    pool.install(|| items.into_par_iter().map(f).collect())
}

/// Fidelity curve for every configured ω (and frame), in config order.
pub fn run_fidelity_curve(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let points: Vec<(Frame, f64)> = frames(cfg)
        .into_iter()
        .flat_map(|f| cfg.device.omega.iter().map(move |&w| (f, w)))
        .collect();
    parallel_map(cfg.output.workers, points, |(frame, omega)| {
        run_point(cfg, omega, frame)
    })
}

/// Lab-versus-RWA comparison at one drive frequency.
#[derive(Clone, Debug, Serialize)]
pub struct RwaPoint {
    pub omega: f64,
    /// `√(1 − |⟨a|b⟩|²)` between the frame-mapped lab state and the RWA state at T.
    pub trace_distance: f64,
    pub lab_fidelity: f64,
    pub rwa_fidelity: f64,
}

/// Trace distance at T between the two frames, per ω in ascending order.
///
/// With `frame = rotating-rwa` both legs are the RWA run.
pub fn run_rwa_convergence(cfg: &ExperimentConfig) -> Result<Vec<RwaPoint>> {
    cfg.validate()?;
    let first_leg = match cfg.anneal.frame {
        Frame::Both => Frame::Lab,
        Frame::RotatingRwa => Frame::RotatingRwa,
        Frame::Lab => {
            return Err(Error::Config(
                "rwa convergence needs anneal.frame = \"both\"".into(),
            ))
        }
    };
    let mut omegas = cfg.device.omega.clone();
    omegas.sort_by(f64::total_cmp);
    parallel_map(cfg.output.workers, omegas, |omega| {
        let a = prepare_run(cfg, omega, first_leg)?;
        let b = prepare_run(cfg, omega, Frame::RotatingRwa)?;
        let (ta, tb) = (a.run()?, b.run()?);
        let t = cfg.anneal.total_time;
        let mapped = a.to_rotating(&ta.final_state, t)?;
        Ok(RwaPoint {
            omega,
            trace_distance: mapped.trace_distance(&tb.final_state)?,
            lab_fidelity: ta.final_fidelity(),
            rwa_fidelity: tb.final_fidelity(),
        })
    })
}

/// The rotating-frame driver at full amplitude, used for sector analysis.
pub fn driver_operator(cfg: &ExperimentConfig) -> Result<OperatorSum> {
    Ok(spin_lock_driver(
        cfg.device.lambda0,
        &cfg.drive_coefficients()?,
    ))
}

/// Obstruction report for every swap candidate of the lattice.
pub fn run_obstruction_scan(cfg: &ExperimentConfig) -> Result<Vec<SymmetryReport>> {
    cfg.validate()?;
    let graph: LatticeGraph = cfg.graph()?;
    scan_candidates(
        &graph,
        &driver_operator(cfg)?,
        &problem_hamiltonian(cfg)?,
        DEFAULT_COMMUTATION_TOL,
    )
}
