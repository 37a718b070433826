use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::operators::{CMatrix, C64};

/// Tolerance on `|‖ψ‖ − 1|` for a state to count as normalised.
pub const NORM_TOL: f64 = 1e-9;

/// A normalised pure state of the register.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<C64>,
}

impl QuantumState {
    /// Wraps amplitudes that are already normalised.
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        let state = QuantumState { amplitudes };
        state.check()?;
        Ok(state)
    }

    /// Normalises arbitrary non-zero amplitudes.
    pub fn normalized(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::param(
                "amplitudes",
                format!("cannot normalise a vector of norm {norm}"),
            ));
        }
        Ok(QuantumState {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Ok(QuantumState { amplitudes: v })
    }

    pub(crate) fn from_raw(amplitudes: DVector<C64>) -> Self {
        QuantumState { amplitudes }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn check(&self) -> Result<()> {
        if self
            .amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::param("amplitudes", "non-finite amplitude"));
        }
        let drift = (self.norm() - 1.0).abs();
        if drift > NORM_TOL {
            return Err(Error::param(
                "amplitudes",
                format!("norm drift {drift:.3e}"),
            ));
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        self.check_dim(other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, a: &CMatrix) -> Result<C64> {
        self.check_dim(a.nrows())?;
        Ok(self.amplitudes.dotc(&(a * &self.amplitudes)))
    }

    /// `U|ψ⟩` without renormalisation; `u` must be unitary.
    pub fn evolve(&self, u: &CMatrix) -> Result<QuantumState> {
        self.check_dim(u.ncols())?;
        Ok(QuantumState {
            amplitudes: u * &self.amplitudes,
        })
    }

    /// Trace distance between the two pure states, `√(1 − |⟨a|b⟩|²)`.
    pub fn trace_distance(&self, other: &QuantumState) -> Result<f64> {
        let overlap = self.inner(other)?.norm_sqr();
        Ok((1.0 - overlap.min(1.0)).max(0.0).sqrt())
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_enforced() {
        let v = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(QuantumState::new(v.clone()).is_err());
        let s = QuantumState::normalized(v).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(QuantumState::normalized(DVector::zeros(2)).is_err());
    }

    #[test]
    fn trace_distance_extremes() {
        let a = QuantumState::basis(4, 0).unwrap();
        let b = QuantumState::basis(4, 3).unwrap();
        assert_eq!(a.trace_distance(&a).unwrap(), 0.0);
        assert_eq!(a.trace_distance(&b).unwrap(), 1.0);
        assert!(a.inner(&QuantumState::basis(2, 0).unwrap()).is_err());
    }
}
