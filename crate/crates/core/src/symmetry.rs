//! Conserved involutions of the anneal and the sector obstruction they cause.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::dynamics::{
    ground_space, hermitian_eigen, GroundSpace, QuantumState, DEFAULT_DEGENERACY_TOL,
};
use crate::error::{Error, Result};
use crate::operators::{
    hermiticity_residual, swap_product, CMatrix, LatticeGraph, OperatorSum, C64,
};

/// Sectors of an involution are ±1; anything further apart than this is a mismatch.
pub const SECTOR_GAP_THRESHOLD: f64 = 1.0;

/// Frobenius residual below which an operator counts as conserved.
pub const DEFAULT_COMMUTATION_TOL: f64 = 1e-9;

/// Largest lattice `swap_candidates` will enumerate.
pub const MAX_CANDIDATE_SITES: usize = 8;

const IMAG_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;

/// `‖AH − HA‖_F`.
pub fn commutator_residual(a: &CMatrix, h: &CMatrix) -> Result<f64> {
    if a.shape() != h.shape() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            actual: a.nrows(),
        });
    }
    let c = a * h - h * a;
    let r = c.norm();
    Ok(if r == 0.0 { 0.0 } else { r })
}

/// `⟨ψ|S|ψ⟩` for a Hermitian `S`.
pub fn sector_expectation(psi: &QuantumState, s: &OperatorSum) -> Result<f64> {
    sector_expectation_matrix(psi, &hermitian_matrix(s)?)
}

fn hermitian_matrix(s: &OperatorSum) -> Result<CMatrix> {
    let m = s.compile()?;
    let residual = hermiticity_residual(&m);
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(m)
}

fn sector_expectation_matrix(psi: &QuantumState, s: &CMatrix) -> Result<f64> {
    let v = psi.expectation(s)?;
    if v.im.abs() > IMAG_TOL {
        return Err(Error::param(
            "S",
            format!("expectation has imaginary part {:.3e}", v.im),
        ));
    }
    Ok(v.re)
}

/// Sector content of a (possibly degenerate) ground space under `S`.
#[derive(Clone, Debug, Serialize)]
pub struct SectorContent {
    /// `Tr(P S) / m`.
    pub value: f64,
    /// Eigenvalues of `S` restricted to the ground space, ascending.
    pub per_state: Vec<f64>,
    pub degeneracy: usize,
    /// The ground space holds states from both sides of the threshold.
    pub mixed: bool,
}

fn sector_content(gs: &GroundSpace, s: &CMatrix) -> Result<SectorContent> {
    let m = gs.degeneracy();
    let images: Vec<_> = gs.basis.iter().map(|b| s * b.amplitudes()).collect();
    let restricted = DMatrix::from_fn(m, m, |a, b| gs.basis[a].amplitudes().dotc(&images[b]));
    let trace: C64 = restricted.trace();
    if trace.im.abs() > IMAG_TOL * m as f64 {
        return Err(Error::param(
            "S",
            format!("restricted trace has imaginary part {:.3e}", trace.im),
        ));
    }
    let per_state = hermitian_eigen(&restricted)?.values;
    let spread = per_state[m - 1] - per_state[0];
    Ok(SectorContent {
        value: trace.re / m as f64,
        mixed: spread > SECTOR_GAP_THRESHOLD,
        per_state,
        degeneracy: m,
    })
}

/// Whether `S` is conserved along `H_D → H_P` and separates their ground spaces.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub label: String,
    pub operator: OperatorSum,
    pub driver_residual: f64,
    pub commutes_with_driver: bool,
    pub problem_residual: f64,
    pub commutes_with_problem: bool,
    pub initial_sector: f64,
    pub target_sector: f64,
    pub initial: SectorContent,
    pub target: SectorContent,
    /// Both commute and the sectors differ by more than `SECTOR_GAP_THRESHOLD`.
    pub obstructed: bool,
}

pub fn obstruction_report(
    h_d: &OperatorSum,
    h_p: &OperatorSum,
    s: &OperatorSum,
    tol: f64,
) -> Result<SymmetryReport> {
    labelled_report(h_d, h_p, s, tol, String::from("S"))
}

fn labelled_report(
    h_d: &OperatorSum,
    h_p: &OperatorSum,
    s: &OperatorSum,
    tol: f64,
    label: String,
) -> Result<SymmetryReport> {
    if h_d.n_qubits() != h_p.n_qubits() || s.n_qubits() != h_p.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: h_p.n_qubits(),
            actual: if s.n_qubits() != h_p.n_qubits() {
                s.n_qubits()
            } else {
                h_d.n_qubits()
            },
        });
    }
    let sm = hermitian_matrix(s)?;
    let (dm, pm) = (h_d.compile()?, h_p.compile()?);
    let driver_residual = commutator_residual(&sm, &dm)?;
    let problem_residual = commutator_residual(&sm, &pm)?;
    let initial = sector_content(&ground_space(&dm, DEFAULT_DEGENERACY_TOL)?, &sm)?;
    let target = sector_content(&ground_space(&pm, DEFAULT_DEGENERACY_TOL)?, &sm)?;
    let (commutes_with_driver, commutes_with_problem) =
        (driver_residual <= tol, problem_residual <= tol);
    Ok(SymmetryReport {
        label,
        operator: s.clone(),
        driver_residual,
        commutes_with_driver,
        problem_residual,
        commutes_with_problem,
        initial_sector: initial.value,
        target_sector: target.value,
        obstructed: commutes_with_driver
            && commutes_with_problem
            && (initial.value - target.value).abs() > SECTOR_GAP_THRESHOLD,
        initial,
        target,
    })
}

/// A product of disjoint SWAPs that maps the bond set onto itself.
#[derive(Clone, Debug, Serialize)]
pub struct SwapCandidate {
    pub pairs: Vec<(usize, usize)>,
    pub operator: OperatorSum,
}

impl SwapCandidate {
    /// `(0,3)(1,4)` style cycle notation.
    pub fn label(&self) -> String {
        self.pairs
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect()
    }
}

/// Every non-trivial product of disjoint transpositions preserving the bonds.
pub fn swap_candidates(graph: &LatticeGraph) -> Result<Vec<SwapCandidate>> {
    let n = graph.n_sites();
    if n > MAX_CANDIDATE_SITES {
        return Err(Error::param(
            "graph",
            format!("{n} sites exceeds the enumeration cap of {MAX_CANDIDATE_SITES}"),
        ));
    }
    let mut matchings = Vec::new();
    collect_matchings(n, 0, &mut vec![false; n], &mut Vec::new(), &mut matchings);
    let mut out = Vec::new();
    for pairs in matchings {
        let mut perm: Vec<usize> = (0..n).collect();
        for &(a, b) in &pairs {
            perm.swap(a, b);
        }
        if graph.is_automorphism(&perm) {
            let operator = swap_product(&pairs, n)?;
            out.push(SwapCandidate { pairs, operator });
        }
    }
    Ok(out)
}

// Partial matchings of 0..n, each emitted once with pairs in ascending order.
fn collect_matchings(
    n: usize,
    start: usize,
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    for a in start..n {
        if used[a] {
            continue;
        }
        for b in a + 1..n {
            if used[b] {
                continue;
            }
            used[a] = true;
            used[b] = true;
            current.push((a, b));
            out.push(current.clone());
            collect_matchings(n, a + 1, used, current, out);
            current.pop();
            used[a] = false;
            used[b] = false;
        }
    }
}

/// One report per swap candidate of `graph`.
pub fn scan_candidates(
    graph: &LatticeGraph,
    h_d: &OperatorSum,
    h_p: &OperatorSum,
    tol: f64,
) -> Result<Vec<SymmetryReport>> {
    swap_candidates(graph)?
        .into_iter()
        .map(|c| labelled_report(h_d, h_p, &c.operator, tol, c.label()))
        .collect()
}
