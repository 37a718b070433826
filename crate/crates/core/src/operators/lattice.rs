use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Qubit sites and the coupling bonds between them.
///
/// Bonds are stored as `(j, k)` with `j < k`, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeGraph {
    n_sites: usize,
    bonds: Vec<(usize, usize)>,
}

impl LatticeGraph {
    pub fn new(n_sites: usize, bonds: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidLattice(
                "a lattice needs at least one site".into(),
            ));
        }
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (a, b) in bonds {
            if a == b {
                return Err(Error::InvalidLattice(format!("self-loop at site {a}")));
            }
            let bond = (a.min(b), a.max(b));
            if bond.1 >= n_sites {
                return Err(Error::SiteOutOfRange {
                    site: bond.1,
                    n_sites,
                });
            }
            if out.contains(&bond) {
                return Err(Error::InvalidLattice(format!("duplicate bond {bond:?}")));
            }
            out.push(bond);
        }
        Ok(LatticeGraph {
            n_sites,
            bonds: out,
        })
    }

    /// A 1-D open chain, the layout of the single-row device Hamiltonian.
    pub fn chain(n_sites: usize) -> Result<Self> {
        LatticeGraph::new(n_sites, (1..n_sites).map(|k| (k - 1, k)))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn bonds(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    pub fn has_bond(&self, a: usize, b: usize) -> bool {
        self.bonds.contains(&(a.min(b), a.max(b)))
    }

    /// Whether relabelling every site `s` as `perm[s]` maps the bond set onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n_sites
            && self
                .bonds
                .iter()
                .all(|&(a, b)| self.has_bond(perm[a], perm[b]))
    }
}

/// Nearest-neighbour square lattice, row-major site order, open boundaries.
pub fn square_lattice(rows: usize, cols: usize) -> Result<LatticeGraph> {
    square_lattice_with_boundary(rows, cols, Boundary::Open)
}

pub fn square_lattice_with_boundary(
    rows: usize,
    cols: usize,
    boundary: Boundary,
) -> Result<LatticeGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidLattice(format!(
            "dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let idx = |r: usize, c: usize| r * cols + c;
    let mut bonds: Vec<(usize, usize)> = Vec::new();
    let mut add = |a: usize, b: usize| {
        let bond = (a.min(b), a.max(b));
        if a != b && !bonds.contains(&bond) {
            bonds.push(bond);
        }
    };
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                add(idx(r, c), idx(r, c + 1));
            } else if boundary == Boundary::Periodic {
                add(idx(r, c), idx(r, 0));
            }
            if r + 1 < rows {
                add(idx(r, c), idx(r + 1, c));
            } else if boundary == Boundary::Periodic {
                add(idx(r, c), idx(0, c));
            }
        }
    }
    LatticeGraph::new(rows * cols, bonds)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every pair of sites at Manhattan distance one.
    fn enumerate_neighbours(rows: usize, cols: usize) -> Vec<(usize, usize)> {
        let n = rows * cols;
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let (ra, ca) = (a / cols, a % cols);
                let (rb, cb) = (b / cols, b % cols);
                if ra.abs_diff(rb) + ca.abs_diff(cb) == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn bond_counts_match_enumeration() {
        for (rows, cols) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (3, 4)] {
            let g = square_lattice(rows, cols).unwrap();
            let mut got = g.bonds().to_vec();
            got.sort();
            assert_eq!(got, enumerate_neighbours(rows, cols), "{rows}x{cols}");
        }
        // frozen after the enumeration above
        let g = square_lattice(2, 3).unwrap();
        assert_eq!((g.n_sites(), g.bonds().len()), (6, 7));
        assert_eq!(square_lattice(1, 2).unwrap().bonds(), &[(0, 1)]);
        assert!(square_lattice(1, 1).unwrap().bonds().is_empty());
    }

    #[test]
    fn non_positive_dimensions_rejected() {
        assert!(square_lattice(0, 3).is_err());
        assert!(square_lattice(2, 0).is_err());
    }

    #[test]
    fn periodic_wraps_without_duplicates() {
        let g = square_lattice_with_boundary(3, 3, Boundary::Periodic).unwrap();
        assert_eq!(g.bonds().len(), 18);
        // wrapping a width-2 ring would duplicate the inner bond
        let g = square_lattice_with_boundary(2, 2, Boundary::Periodic).unwrap();
        assert_eq!(g.bonds().len(), 4);
    }

    #[test]
    fn graph_validation() {
        assert!(LatticeGraph::new(2, [(0, 0)]).is_err());
        assert!(LatticeGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(LatticeGraph::new(2, [(0, 2)]).is_err());
        assert!(LatticeGraph::new(0, []).is_err());
    }

    #[test]
    fn row_reflection_is_an_automorphism() {
        let g = square_lattice(2, 3).unwrap();
        assert!(g.is_automorphism(&[3, 4, 5, 0, 1, 2]));
        assert!(!g.is_automorphism(&[1, 0, 3, 2, 5, 4]));
    }
}
