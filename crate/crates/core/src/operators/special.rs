use std::collections::HashSet;

use super::pauli::{Axis, CMatrix, OperatorSum, PauliTerm, C64};
use crate::error::{Error, Result};

/// Two-qubit SWAP as `(II + XX + YY + ZZ) / 2`.
fn swap_term(n: usize, j: usize, k: usize) -> Result<OperatorSum> {
    OperatorSum::from_terms(
        n,
        [
            PauliTerm::identity(0.5),
            PauliTerm::pair(0.5, (j, Axis::X), (k, Axis::X)),
            PauliTerm::pair(0.5, (j, Axis::Y), (k, Axis::Y)),
            PauliTerm::pair(0.5, (j, Axis::Z), (k, Axis::Z)),
        ],
    )
}

/// Product of SWAP gates over disjoint site pairs, expanded into Pauli strings.
///
/// All coefficients are dyadic, so the compiled matrix is an exact permutation.
pub fn swap_product(pairs: &[(usize, usize)], n: usize) -> Result<OperatorSum> {
    let mut seen = HashSet::new();
    for &(j, k) in pairs {
        for s in [j, k] {
            if s >= n {
                return Err(Error::SiteOutOfRange {
                    site: s,
                    n_sites: n,
                });
            }
            if !seen.insert(s) {
                return Err(Error::OverlappingPairs(s));
            }
        }
    }
    let mut op = OperatorSum::identity(n);
    for &(j, k) in pairs {
        op = op.product(&swap_term(n, j, k)?)?.simplify();
    }
    Ok(op)
}

/// `exp(-i · angle · Σ_{s ∈ sites} σ_s^axis)` as a dense unitary.
///
/// Built from the single-qubit closed form `cos(angle)·I - i·sin(angle)·σ`.
pub fn rotation_unitary(axis: Axis, angle: f64, sites: &[usize], n: usize) -> Result<CMatrix> {
    let mut seen = HashSet::new();
    for &s in sites {
        if s >= n {
            return Err(Error::SiteOutOfRange {
                site: s,
                n_sites: n,
            });
        }
        if !seen.insert(s) {
            return Err(Error::RepeatedSite(s));
        }
    }
    let id = CMatrix::identity(2, 2);
    let local = &id * C64::new(angle.cos(), 0.0) - axis.matrix() * C64::new(0.0, angle.sin());
    let mut u = CMatrix::identity(1, 1);
    for s in 0..n {
        u = if seen.contains(&s) {
            u.kronecker(&local)
        } else {
            u.kronecker(&id)
        };
    }
    Ok(u)
}

/// Rotation on every site of an `n`-qubit register.
pub fn global_rotation(axis: Axis, angle: f64, n: usize) -> Result<CMatrix> {
    let sites: Vec<usize> = (0..n).collect();
    rotation_unitary(axis, angle, &sites, n)
}
