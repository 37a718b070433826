//! Pauli-string algebra, lattice graphs and special operators.

mod lattice;
mod pauli;
mod special;

pub use lattice::{square_lattice, square_lattice_with_boundary, Boundary, LatticeGraph};
pub use pauli::{Axis, CMatrix, OperatorSum, PauliTerm, C64, DEFAULT_QUBIT_CAP};
pub use special::{global_rotation, rotation_unitary, swap_product};

/// Uniform field `Σ_j σ_j^axis` on an `n`-qubit register.
pub fn field_sum(n: usize, axis: Axis) -> OperatorSum {
    weighted_field(&vec![1.0; n], axis)
}

/// `Σ_j w_j σ_j^axis`, one term per site in site order.
pub fn weighted_field(weights: &[f64], axis: Axis) -> OperatorSum {
    let n = weights.len();
    OperatorSum::from_terms(
        n,
        weights
            .iter()
            .enumerate()
            .map(|(j, &w)| PauliTerm::single(w, j, axis)),
    )
    .expect("site indices are in range by construction")
}

/// `Σ_{⟨j,k⟩} σ_j^axis σ_k^axis` over the graph bonds.
pub fn bond_sum(graph: &LatticeGraph, axis: Axis) -> OperatorSum {
    OperatorSum::from_terms(
        graph.n_sites(),
        graph
            .bonds()
            .iter()
            .map(|&(j, k)| PauliTerm::pair(1.0, (j, axis), (k, axis))),
    )
    .expect("bond sites are in range by construction")
}

/// Hermitian part check: largest elementwise `|m - m†|`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}
