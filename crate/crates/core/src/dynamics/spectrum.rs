use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::state::QuantumState;
use crate::error::{Error, Result};
use crate::operators::{hermiticity_residual, CMatrix, C64};

pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-6;

/// Residual above which a matrix is rejected as non-Hermitian.
const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(h: &CMatrix) -> Result<Eigensystem> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            actual: h.ncols(),
        });
    }
    let residual = hermiticity_residual(h);
    let scale = h.norm().max(1.0);
    if residual > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { residual });
    }
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("QR iteration did not converge".into()))?;
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::Eigensolver("non-finite eigenvalue".into()));
    }
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigensystem { values, vectors })
}

/// `exp(−i H t)` through the eigendecomposition; unitary by construction.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eigen(h)?;
    Ok(eig.propagator(t))
}

impl Eigensystem {
    pub fn propagator(&self, t: f64) -> CMatrix {
        let phases = DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&e| C64::from_polar(1.0, -e * t)),
        );
        let scaled = DMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |r, c| {
            self.vectors[(r, c)] * phases[c]
        });
        scaled * self.vectors.adjoint()
    }
}

/// Lowest eigenspace of a Hermitian operator.
#[derive(Clone, Debug)]
pub struct GroundSpace {
    pub energy: f64,
    pub basis: Vec<QuantumState>,
    pub tolerance: f64,
}

impl GroundSpace {
    pub fn degeneracy(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim()
    }

    /// Same space, basis re-mixed by a unitary `u` (m × m).
    pub fn rotated(&self, u: &CMatrix) -> Result<GroundSpace> {
        let m = self.degeneracy();
        if u.nrows() != m || u.ncols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: u.nrows(),
            });
        }
        let basis = (0..m)
            .map(|k| {
                let v = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(DVector::zeros(self.dim()), |acc: DVector<C64>, (j, b)| {
                        acc + b.amplitudes() * u[(j, k)]
                    });
                QuantumState::from_raw(v)
            })
            .collect();
        Ok(GroundSpace {
            energy: self.energy,
            basis,
            tolerance: self.tolerance,
        })
    }
}

/// All eigenvectors within `degeneracy_tol` of the lowest eigenvalue.
pub fn ground_space(h: &CMatrix, degeneracy_tol: f64) -> Result<GroundSpace> {
    let eig = hermitian_eigen(h)?;
    let e0 = eig.values[0];
    let m = eig
        .values
        .iter()
        .take_while(|&&e| e - e0 <= degeneracy_tol)
        .count();
    // Gram-Schmidt over the selected columns; the eigensolver output is already
    // orthonormal to rounding, this only tightens it.
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(m);
    for k in 0..m {
        let mut v: DVector<C64> = eig.vectors.column(k).into_owned();
        for b in &basis {
            let proj = b.dotc(&v);
            v -= b * proj;
        }
        let norm = v.norm();
        basis.push(v.unscale(norm));
    }
    Ok(GroundSpace {
        energy: e0,
        basis: basis.into_iter().map(QuantumState::from_raw).collect(),
        tolerance: degeneracy_tol,
    })
}

/// Lowest `k_levels` eigenvalues of `h(s)` on a uniform grid of `n_points` over [0, 1].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralFlow {
    pub s: Vec<f64>,
    pub levels: Vec<Vec<f64>>,
}

impl SpectralFlow {
    /// Gap between levels 0 and 1 along the grid.
    pub fn gaps(&self) -> Vec<f64> {
        self.levels
            .iter()
            .map(|l| l.get(1).map_or(f64::NAN, |e1| e1 - l[0]))
            .collect()
    }

    /// `(s, gap)` at the smallest gap.
    pub fn minimum_gap(&self) -> (f64, f64) {
        self.gaps()
            .into_iter()
            .zip(&self.s)
            .map(|(g, &s)| (s, g))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((f64::NAN, f64::NAN))
    }
}

pub fn spectral_flow(
    h_of_s: impl Fn(f64) -> CMatrix,
    n_points: usize,
    k_levels: usize,
) -> Result<SpectralFlow> {
    if n_points < 2 {
        return Err(Error::param(
            "n_points",
            format!("need at least 2, got {n_points}"),
        ));
    }
    let mut s = Vec::with_capacity(n_points);
    let mut levels = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let si = i as f64 / (n_points - 1) as f64;
        let eig = hermitian_eigen(&h_of_s(si))?;
        s.push(si);
        levels.push(eig.values.into_iter().take(k_levels).collect());
    }
    Ok(SpectralFlow { s, levels })
}
