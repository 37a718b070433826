//! Schrödinger propagation `i dψ/dt = H(t) ψ` on a uniform step grid.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::hamiltonian::TimeDependentHamiltonian;
use super::spectrum::expm_hermitian;
use super::state::{QuantumState, NORM_TOL};
use crate::error::{Error, Result};
use crate::operators::{CMatrix, C64};

/// Largest norm drift tolerated before an RK4 run is abandoned.
pub const RK4_DRIFT_TOL: f64 = 1e-6;

const TAYLOR_TOL: f64 = 1e-16;
const TAYLOR_MAX_TERMS: usize = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `exp(−i H(t + dt/2) dt)` per step; second order.
    #[default]
    Midpoint,
    /// Fourth-order commutator-free Magnus: two exponentials at the Gauss nodes.
    Magnus4,
    /// Classical Runge-Kutta on the Schrödinger equation, renormalised per step.
    Rk4,
}

/// How the exponential methods evaluate `exp(−i A dt) ψ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpKernel {
    /// Dense Hermitian eigendecomposition of the step generator.
    #[default]
    Eigen,
    /// Taylor series of the action on the state, summed to machine precision,
    /// using the Hamiltonian's matrix-free product.
    Taylor,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropagationSettings {
    pub total_time: f64,
    pub dt: f64,
    pub method: Method,
    pub kernel: ExpKernel,
    /// Probe samples on a uniform grid, not counting `t = 0`.
    pub n_samples: usize,
    pub max_snapshots: usize,
}

impl PropagationSettings {
    pub fn new(total_time: f64, dt: f64) -> Self {
        PropagationSettings {
            total_time,
            dt,
            method: Method::default(),
            kernel: ExpKernel::default(),
            n_samples: 200,
            max_snapshots: 512,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_kernel(mut self, kernel: ExpKernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn with_samples(mut self, n_samples: usize) -> Self {
        self.n_samples = n_samples;
        self
    }

    pub fn with_max_snapshots(mut self, max_snapshots: usize) -> Self {
        self.max_snapshots = max_snapshots;
        self
    }

    /// Number of steps; `dt` has to divide `total_time` up to rounding.
    pub fn steps(&self) -> Result<usize> {
        let (t, dt) = (self.total_time, self.dt);
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::param("T", format!("must be positive, got {t}")));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::param("dt", format!("must be positive, got {dt}")));
        }
        let n = (t / dt).round();
        if n < 1.0 || (n * dt - t).abs() > 1e-9 * t {
            return Err(Error::param("dt", format!("{dt} does not divide T = {t}")));
        }
        Ok(n as usize)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub steps: usize,
    pub dt: f64,
    pub method: Method,
    pub kernel: ExpKernel,
    /// Largest `|‖ψ‖ − 1|` seen at a sample point (before renormalising, for RK4).
    pub max_norm_drift: f64,
    /// Largest `dt · ‖H‖` bound over the sample points.
    pub max_step_norm: f64,
}

/// Sampled history of one propagation.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Probe value at each entry of `times`; the ground-space fidelity in
    /// annealing runs.
    pub fidelities: Vec<f64>,
    /// Decimated `(t, ψ(t))` pairs, at most `max_snapshots` of them.
    pub snapshots: Vec<(f64, QuantumState)>,
    pub final_state: QuantumState,
    pub diagnostics: SolverDiagnostics,
}

impl Trajectory {
    pub fn final_fidelity(&self) -> f64 {
        *self
            .fidelities
            .last()
            .expect("trajectory has at least two samples")
    }
}

/// Propagates without probing; samples are `NaN`.
pub fn evolve<H: TimeDependentHamiltonian + ?Sized>(
    h: &H,
    psi0: &QuantumState,
    settings: &PropagationSettings,
) -> Result<Trajectory> {
    propagate(h, psi0, settings, |_, _| Ok(f64::NAN))
}

/// Propagates `psi0` over `[0, T]`, calling `probe(t, ψ(t))` on the sample grid.
pub fn propagate<H, P>(
    h: &H,
    psi0: &QuantumState,
    settings: &PropagationSettings,
    probe: P,
) -> Result<Trajectory>
where
    H: TimeDependentHamiltonian + ?Sized,
    P: Fn(f64, &QuantumState) -> Result<f64>,
{
    if psi0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            actual: psi0.dim(),
        });
    }
    psi0.check()?;
    let steps = settings.steps()?;
    let dt = settings.total_time / steps as f64;
    let n_samples = settings.n_samples.clamp(1, steps);
    let sample_steps: Vec<usize> = (0..=n_samples).map(|i| (i * steps) / n_samples).collect();
    let snapshot_every = (sample_steps.len()).div_ceil(settings.max_snapshots.max(1));

    let mut diagnostics = SolverDiagnostics {
        steps,
        dt,
        method: settings.method,
        kernel: settings.kernel,
        ..Default::default()
    };
    let mut stepper = Stepper::new(h.dim());
    let mut psi: Vec<C64> = psi0.amplitudes().iter().copied().collect();
    let mut times = Vec::with_capacity(sample_steps.len());
    let mut fidelities = Vec::with_capacity(sample_steps.len());
    let mut snapshots = Vec::new();
    let mut warned = false;
    let mut k = 0usize;

    for (i, &target) in sample_steps.iter().enumerate() {
        while k < target {
            let t = k as f64 * dt;
            stepper.step(h, settings, t, dt, &mut psi, &mut diagnostics)?;
            k += 1;
        }
        let t = k as f64 * dt;
        let state = QuantumState::from_raw(DVector::from_column_slice(&psi));
        let drift = (state.norm() - 1.0).abs();
        diagnostics.max_norm_drift = diagnostics.max_norm_drift.max(drift);
        if state
            .amplitudes()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Propagation {
                time: t,
                reason: "non-finite amplitude".into(),
            });
        }
        if settings.method != Method::Rk4 && drift > NORM_TOL {
            return Err(Error::Propagation {
                time: t,
                reason: format!("norm drift {drift:.3e} exceeds {NORM_TOL:.0e}"),
            });
        }
        let step_norm = dt * h.norm_bound(t);
        diagnostics.max_step_norm = diagnostics.max_step_norm.max(step_norm);
        if step_norm >= 0.5 && !warned && settings.kernel == ExpKernel::Eigen {
            log::warn!("dt·‖H‖ bound {step_norm:.3} ≥ 0.5 at t = {t} ns; consider a smaller step");
            warned = true;
        }
        times.push(t);
        fidelities.push(probe(t, &state)?);
        if i % snapshot_every == 0 || i + 1 == sample_steps.len() {
            snapshots.push((t, state));
        }
    }
    if snapshots.len() > settings.max_snapshots.max(1) {
        // the forced final snapshot can push one over the cap
        let last = snapshots.pop().expect("non-empty");
        snapshots.pop();
        snapshots.push(last);
    }
    let final_state = snapshots.last().expect("final snapshot").1.clone();
    Ok(Trajectory {
        times,
        fidelities,
        snapshots,
        final_state,
        diagnostics,
    })
}

/// Gauss-Legendre nodes and weights of the fourth-order commutator-free Magnus scheme.
const SQRT3: f64 = 1.732_050_807_568_877_2;
const GAUSS_NODES: [f64; 2] = [0.5 - SQRT3 / 6.0, 0.5 + SQRT3 / 6.0];
const CF4_A: f64 = 0.25 + SQRT3 / 6.0;
const CF4_B: f64 = 0.25 - SQRT3 / 6.0;

struct Stepper {
    term: Vec<C64>,
    next: Vec<C64>,
    acc: Vec<C64>,
    k: [Vec<C64>; 4],
    tmp: Vec<C64>,
}

impl Stepper {
    fn new(dim: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); dim];
        Stepper {
            term: z.clone(),
            next: z.clone(),
            acc: z.clone(),
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    fn step<H: TimeDependentHamiltonian + ?Sized>(
        &mut self,
        h: &H,
        settings: &PropagationSettings,
        t: f64,
        dt: f64,
        psi: &mut [C64],
        diagnostics: &mut SolverDiagnostics,
    ) -> Result<()> {
        match settings.method {
            Method::Midpoint => {
                let tm = t + 0.5 * dt;
                self.exponential(settings.kernel, &[(tm, 1.0)], h, dt, psi, t)
            }
            Method::Magnus4 => {
                let (t1, t2) = (t + GAUSS_NODES[0] * dt, t + GAUSS_NODES[1] * dt);
                // the factor weighted towards the earlier node acts first
                self.exponential(settings.kernel, &[(t1, CF4_A), (t2, CF4_B)], h, dt, psi, t)?;
                self.exponential(settings.kernel, &[(t1, CF4_B), (t2, CF4_A)], h, dt, psi, t)
            }
            Method::Rk4 => self.rk4(h, t, dt, psi, diagnostics),
        }
    }

    /// `psi ← exp(−i dt Σ w_i H(t_i)) psi`.
    fn exponential<H: TimeDependentHamiltonian + ?Sized>(
        &mut self,
        kernel: ExpKernel,
        parts: &[(f64, f64)],
        h: &H,
        dt: f64,
        psi: &mut [C64],
        t: f64,
    ) -> Result<()> {
        match kernel {
            ExpKernel::Eigen => {
                let mut m = CMatrix::zeros(h.dim(), h.dim());
                for &(ti, w) in parts {
                    m += h.matrix(ti) * C64::new(w, 0.0);
                }
                let u = expm_hermitian(&m, dt).map_err(|e| Error::Propagation {
                    time: t,
                    reason: e.to_string(),
                })?;
                let v = &u * DVector::from_column_slice(psi);
                psi.copy_from_slice(v.as_slice());
                Ok(())
            }
            ExpKernel::Taylor => {
                let bound: f64 = parts
                    .iter()
                    .map(|&(ti, w)| w.abs() * h.norm_bound(ti))
                    .sum();
                let substeps = (bound * dt).ceil().max(1.0) as usize;
                let hstep = dt / substeps as f64;
                for _ in 0..substeps {
                    self.taylor_substep(parts, h, hstep, psi, t)?;
                }
                Ok(())
            }
        }
    }

    fn taylor_substep<H: TimeDependentHamiltonian + ?Sized>(
        &mut self,
        parts: &[(f64, f64)],
        h: &H,
        hstep: f64,
        psi: &mut [C64],
        t: f64,
    ) -> Result<()> {
        self.term.copy_from_slice(psi);
        self.acc.copy_from_slice(psi);
        for n in 1..=TAYLOR_MAX_TERMS {
            self.next.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            for &(ti, w) in parts {
                h.apply_add(ti, w, &self.term, &mut self.next);
            }
            let factor = C64::new(0.0, -hstep / n as f64);
            let mut term_norm = 0.0;
            for (tm, nx) in self.term.iter_mut().zip(&self.next) {
                *tm = nx * factor;
                term_norm += tm.norm_sqr();
            }
            let mut acc_norm = 0.0;
            for (a, tm) in self.acc.iter_mut().zip(&self.term) {
                *a += tm;
                acc_norm += a.norm_sqr();
            }
            if term_norm <= TAYLOR_TOL * TAYLOR_TOL * acc_norm {
                psi.copy_from_slice(&self.acc);
                return Ok(());
            }
        }
        Err(Error::Propagation {
            time: t,
            reason: "Taylor series of the step exponential did not converge".into(),
        })
    }

    fn rk4<H: TimeDependentHamiltonian + ?Sized>(
        &mut self,
        h: &H,
        t: f64,
        dt: f64,
        psi: &mut [C64],
        diagnostics: &mut SolverDiagnostics,
    ) -> Result<()> {
        let minus_i = C64::new(0.0, -1.0);
        let stages = [(0.0, 0.0), (0.5, 0.5), (0.5, 0.5), (1.0, 1.0)];
        for s in 0..4 {
            let (c, a) = stages[s];
            self.tmp.copy_from_slice(psi);
            if s > 0 {
                for (x, kp) in self.tmp.iter_mut().zip(&self.k[s - 1]) {
                    *x += kp * (a * dt);
                }
            }
            let out = &mut self.k[s];
            out.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            h.apply_add(t + c * dt, 1.0, &self.tmp, out);
            out.iter_mut().for_each(|z| *z *= minus_i);
        }
        for (i, x) in psi.iter_mut().enumerate() {
            *x += (self.k[0][i] + self.k[1][i] * 2.0 + self.k[2][i] * 2.0 + self.k[3][i])
                * (dt / 6.0);
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let drift = (norm - 1.0).abs();
        diagnostics.max_norm_drift = diagnostics.max_norm_drift.max(drift);
        if drift > RK4_DRIFT_TOL {
            return Err(Error::Propagation {
                time: t + dt,
                reason: format!("RK4 norm drift {drift:.3e} exceeds {RK4_DRIFT_TOL:.0e}"),
            });
        }
        if drift > 1e-12 {
            log::debug!("RK4 renormalising at t = {} ns (drift {drift:.2e})", t + dt);
        }
        psi.iter_mut().for_each(|z| *z /= norm);
        Ok(())
    }
}
