//! Time-dependent Hamiltonians as seen by the propagator (rad/ns).

use crate::operators::{CMatrix, C64};

/// `H(t)` in rad/ns for `t` in ns.
pub trait TimeDependentHamiltonian: Sync {
    fn dim(&self) -> usize;

    fn matrix(&self, t: f64) -> CMatrix;

    /// `out += weight · H(t) v`.
    fn apply_add(&self, t: f64, weight: f64, v: &[C64], out: &mut [C64]) {
        let m = self.matrix(t);
        dense_apply_add(&m, weight, v, out);
    }

    /// Upper bound on the spectral norm of `H(t)`.
    fn norm_bound(&self, t: f64) -> f64 {
        max_row_sum(&self.matrix(t))
    }
}

/// A constant Hamiltonian.
impl TimeDependentHamiltonian for CMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn matrix(&self, _t: f64) -> CMatrix {
        self.clone()
    }
}

/// Wraps a closure `t ↦ H(t)`.
pub struct FnHamiltonian<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(f64) -> CMatrix + Sync> FnHamiltonian<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnHamiltonian { dim, f }
    }
}

impl<F: Fn(f64) -> CMatrix + Sync> TimeDependentHamiltonian for FnHamiltonian<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&self, t: f64) -> CMatrix {
        (self.f)(t)
    }
}

/// Row-compressed copy of a dense matrix with exact zeros dropped.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    dim: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<C64>,
    row_sum: f64,
}

impl SparseOperator {
    pub fn from_dense(m: &CMatrix) -> Self {
        let dim = m.nrows();
        let mut row_start = Vec::with_capacity(dim + 1);
        let (mut cols, mut values) = (Vec::new(), Vec::new());
        let mut row_sum: f64 = 0.0;
        for r in 0..dim {
            row_start.push(cols.len());
            let mut s = 0.0;
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                if z.re != 0.0 || z.im != 0.0 {
                    cols.push(c);
                    values.push(z);
                    s += z.norm();
                }
            }
            row_sum = row_sum.max(s);
        }
        row_start.push(cols.len());
        SparseOperator {
            dim,
            row_start,
            cols,
            values,
            row_sum,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Largest absolute row sum, a bound on the spectral norm.
    pub fn row_sum_norm(&self) -> f64 {
        self.row_sum
    }

    pub fn apply_add(&self, weight: C64, v: &[C64], out: &mut [C64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let (a, b) = (self.row_start[r], self.row_start[r + 1]);
            let acc = self.cols[a..b]
                .iter()
                .zip(&self.values[a..b])
                .fold(C64::new(0.0, 0.0), |acc, (&c, &z)| acc + z * v[c]);
            *o += weight * acc;
        }
    }
}

pub(crate) fn dense_apply_add(m: &CMatrix, weight: f64, v: &[C64], out: &mut [C64]) {
    for (r, o) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (c, &x) in v.iter().enumerate() {
            acc += m[(r, c)] * x;
        }
        *o += acc * weight;
    }
}

pub(crate) fn max_row_sum(m: &CMatrix) -> f64 {
    (0..m.nrows())
        .map(|r| m.row(r).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

type Coefficient = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// `H(t) = Σ_k f_k(t) M_k` with fixed matrices and scalar schedules.
pub struct ScheduledHamiltonian {
    dim: usize,
    terms: Vec<ScheduledTerm>,
}

struct ScheduledTerm {
    coefficient: Coefficient,
    dense: CMatrix,
    sparse: SparseOperator,
}

impl ScheduledHamiltonian {
    pub fn new(dim: usize) -> Self {
        ScheduledHamiltonian {
            dim,
            terms: Vec::new(),
        }
    }

    /// Adds `f(t) · m`; `m` must be Hermitian and `dim × dim`.
    pub fn with_term(mut self, m: CMatrix, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        assert_eq!(m.nrows(), self.dim, "term dimension");
        self.terms.push(ScheduledTerm {
            coefficient: Box::new(f),
            sparse: SparseOperator::from_dense(&m),
            dense: m,
        });
        self
    }

    pub fn coefficients(&self, t: f64) -> Vec<f64> {
        self.terms
            .iter()
            .map(|term| (term.coefficient)(t))
            .collect()
    }
}

impl TimeDependentHamiltonian for ScheduledHamiltonian {
    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&self, t: f64) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for term in &self.terms {
            let c = (term.coefficient)(t);
            if c != 0.0 {
                m += &term.dense * C64::new(c, 0.0);
            }
        }
        m
    }

    fn apply_add(&self, t: f64, weight: f64, v: &[C64], out: &mut [C64]) {
        for term in &self.terms {
            let c = (term.coefficient)(t) * weight;
            if c != 0.0 {
                term.sparse.apply_add(C64::new(c, 0.0), v, out);
            }
        }
    }

    fn norm_bound(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|term| (term.coefficient)(t).abs() * term.sparse.row_sum_norm())
            .sum()
    }
}
