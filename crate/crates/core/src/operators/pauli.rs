//! Weighted Pauli strings and their dense matrix compilation.
//!
//! Basis convention: site 0 is the most significant bit of a basis index, so
//! the dense matrix of a string is `σ_0 ⊗ σ_1 ⊗ … ⊗ σ_{n-1}`. Computational
//! state `|0⟩` is the `+1` eigenvector of `Z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Largest register `compile` accepts unless told otherwise.
pub const DEFAULT_QUBIT_CAP: usize = 12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Single-qubit Pauli matrix, `Y = [[0, -i], [i, 0]]`.
    pub fn matrix(self) -> CMatrix {
        match self {
            Axis::X => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            Axis::Y => CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
            Axis::Z => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        }
    }

    /// `self · other = phase · axis`, with `None` standing for the identity.
    fn product(self, other: Axis) -> (C64, Option<Axis>) {
        use Axis::*;
        match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => (ONE, None),
            (X, Y) => (I, Some(Z)),
            (Y, X) => (-I, Some(Z)),
            (Y, Z) => (I, Some(X)),
            (Z, Y) => (-I, Some(X)),
            (Z, X) => (I, Some(Y)),
            (X, Z) => (-I, Some(Y)),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// A coefficient times a tensor product of single-site Pauli operators.
///
/// An empty factor list is the identity scaled by `coefficient`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coefficient: C64,
    factors: Vec<(usize, Axis)>,
}

impl PauliTerm {
    /// Builds a term, rejecting repeated sites. Factors are stored sorted by site.
    pub fn new(
        coefficient: impl Into<C64>,
        factors: impl IntoIterator<Item = (usize, Axis)>,
    ) -> Result<Self> {
        let mut factors: Vec<(usize, Axis)> = factors.into_iter().collect();
        factors.sort_by_key(|&(site, _)| site);
        if let Some(w) = factors.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::RepeatedSite(w[0].0));
        }
        Ok(PauliTerm {
            coefficient: coefficient.into(),
            factors,
        })
    }

    pub fn identity(coefficient: impl Into<C64>) -> Self {
        PauliTerm {
            coefficient: coefficient.into(),
            factors: Vec::new(),
        }
    }

    pub fn single(coefficient: impl Into<C64>, site: usize, axis: Axis) -> Self {
        PauliTerm {
            coefficient: coefficient.into(),
            factors: vec![(site, axis)],
        }
    }

    /// Two-site term; panics if `j == k`.
    pub fn pair(coefficient: impl Into<C64>, (j, a): (usize, Axis), (k, b): (usize, Axis)) -> Self {
        PauliTerm::new(coefficient, [(j, a), (k, b)]).expect("pair term needs two distinct sites")
    }

    pub fn factors(&self) -> &[(usize, Axis)] {
        &self.factors
    }

    pub fn max_site(&self) -> Option<usize> {
        self.factors.last().map(|&(s, _)| s)
    }

    /// Product of two strings with the single-site phases folded into the coefficient.
    pub fn product(&self, other: &PauliTerm) -> PauliTerm {
        let mut coefficient = self.coefficient * other.coefficient;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (
            self.factors.iter().peekable(),
            other.factors.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(sa, pa)), Some(&&(sb, pb))) if sa == sb => {
                    let (phase, axis) = pa.product(pb);
                    coefficient *= phase;
                    if let Some(axis) = axis {
                        factors.push((sa, axis));
                    }
                    a.next();
                    b.next();
                }
                (Some(&&(sa, pa)), Some(&&(sb, _))) if sa < sb => {
                    factors.push((sa, pa));
                    a.next();
                }
                (Some(_), Some(&&f)) => {
                    factors.push(f);
                    b.next();
                }
                (Some(&&f), None) => {
                    factors.push(f);
                    a.next();
                }
                (None, Some(&&f)) => {
                    factors.push(f);
                    b.next();
                }
                (None, None) => break,
            }
        }
        PauliTerm {
            coefficient,
            factors,
        }
    }

    /// Bit masks over an `n`-qubit register: (flip mask, sign mask, number of Y factors).
    fn masks(&self, n: usize) -> (usize, usize, usize) {
        let (mut flip, mut sign, mut n_y) = (0usize, 0usize, 0usize);
        for &(site, axis) in &self.factors {
            let bit = 1usize << (n - 1 - site);
            match axis {
                Axis::X => flip |= bit,
                Axis::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                Axis::Z => sign |= bit,
            }
        }
        (flip, sign, n_y)
    }

    fn same_string(&self, other: &PauliTerm) -> bool {
        self.factors == other.factors
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+}{:+}i)", self.coefficient.re, self.coefficient.im)?;
        if self.factors.is_empty() {
            return write!(f, " I");
        }
        for (site, axis) in &self.factors {
            write!(f, " {axis}{site}")?;
        }
        Ok(())
    }
}

/// A symbolic sum of Pauli strings on a fixed register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl OperatorSum {
    pub fn zero(n_qubits: usize) -> Self {
        OperatorSum {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        OperatorSum {
            n_qubits,
            terms: vec![PauliTerm::identity(1.0)],
        }
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut op = OperatorSum::zero(n_qubits);
        for t in terms {
            op.push(t)?;
        }
        Ok(op)
    }

    /// `(X + iY) / 2` on `site`.
    pub fn sigma_plus(n_qubits: usize, site: usize) -> Result<Self> {
        OperatorSum::from_terms(
            n_qubits,
            [
                PauliTerm::single(0.5, site, Axis::X),
                PauliTerm::single(C64::new(0.0, 0.5), site, Axis::Y),
            ],
        )
    }

    /// `(X - iY) / 2` on `site`.
    pub fn sigma_minus(n_qubits: usize, site: usize) -> Result<Self> {
        OperatorSum::from_terms(
            n_qubits,
            [
                PauliTerm::single(0.5, site, Axis::X),
                PauliTerm::single(C64::new(0.0, -0.5), site, Axis::Y),
            ],
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        if let Some(site) = term.max_site() {
            if site >= self.n_qubits {
                return Err(Error::SiteOutOfRange {
                    site,
                    n_sites: self.n_qubits,
                });
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn scale(mut self, factor: impl Into<C64>) -> Self {
        let factor = factor.into();
        for t in &mut self.terms {
            t.coefficient *= factor;
        }
        self
    }

    pub fn adjoint(&self) -> Self {
        OperatorSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm {
                    coefficient: t.coefficient.conj(),
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    /// Operator product, expanded term by term (left terms outer).
    pub fn product(&self, other: &OperatorSum) -> Result<OperatorSum> {
        self.check_register(other)?;
        let terms = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| a.product(b)))
            .collect();
        Ok(OperatorSum {
            n_qubits: self.n_qubits,
            terms,
        })
    }

    /// Merges terms with identical strings (first-appearance order) and drops exact zeros.
    pub fn simplify(&self) -> OperatorSum {
        let mut merged: Vec<PauliTerm> = Vec::new();
        for t in &self.terms {
            match merged.iter_mut().find(|m| m.same_string(t)) {
                Some(m) => m.coefficient += t.coefficient,
                None => merged.push(t.clone()),
            }
        }
        merged.retain(|t| t.coefficient != ZERO);
        OperatorSum {
            n_qubits: self.n_qubits,
            terms: merged,
        }
    }

    /// True when every coefficient is real, so the compiled matrix is Hermitian.
    pub fn is_hermitian_by_construction(&self) -> bool {
        self.simplify()
            .terms
            .iter()
            .all(|t| t.coefficient.im == 0.0)
    }

    pub fn compile(&self) -> Result<CMatrix> {
        self.compile_with_cap(DEFAULT_QUBIT_CAP)
    }

    /// Dense `2^n × 2^n` matrix, accumulated in listed term order.
    pub fn compile_with_cap(&self, cap: usize) -> Result<CMatrix> {
        let n = self.n_qubits;
        if n > cap {
            return Err(Error::QubitCapExceeded { n_qubits: n, cap });
        }
        if n == 0 {
            return Err(Error::param("n_qubits", "must be positive"));
        }
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for term in &self.terms {
            if let Some(site) = term.max_site() {
                if site >= n {
                    return Err(Error::SiteOutOfRange { site, n_sites: n });
                }
            }
            let (flip, sign, n_y) = term.masks(n);
            let base = term.coefficient * i_pow(n_y);
            for col in 0..dim {
                let value = if (col & sign).count_ones() % 2 == 0 {
                    base
                } else {
                    -base
                };
                m[(col ^ flip, col)] += value;
            }
        }
        Ok(m)
    }

    fn check_register(&self, other: &OperatorSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        Ok(())
    }
}

fn i_pow(k: usize) -> C64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

impl fmt::Display for OperatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

// Arithmetic on mismatched registers is a programming error, so these panic.
impl Add for OperatorSum {
    type Output = OperatorSum;
    fn add(mut self, rhs: OperatorSum) -> OperatorSum {
        assert_eq!(
            self.n_qubits, rhs.n_qubits,
            "adding operators on different registers"
        );
        self.terms.extend(rhs.terms);
        self
    }
}

impl Sub for OperatorSum {
    type Output = OperatorSum;
    fn sub(self, rhs: OperatorSum) -> OperatorSum {
        self + (-rhs)
    }
}

impl Neg for OperatorSum {
    type Output = OperatorSum;
    fn neg(self) -> OperatorSum {
        self.scale(-1.0)
    }
}

impl Mul<f64> for OperatorSum {
    type Output = OperatorSum;
    fn mul(self, rhs: f64) -> OperatorSum {
        self.scale(rhs)
    }
}
