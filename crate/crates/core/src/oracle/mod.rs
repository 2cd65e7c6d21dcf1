//! Exact β = 2 gap probabilities for a correlated population spectrum.
//!
//! Two independent routes: a p×p determinant of incomplete-gamma integrals
//! built from the joint eigenvalue density ([`Beta2Oracle`]), and direct
//! quadrature of the invariant n×n matrix-model integral for the largest
//! eigenvalue at very small n ([`gap_max_matrix_model_beta2`]).

mod andreief;
mod matrix_model;

pub use andreief::{gap_exact_beta2, gap_exact_beta2_with, gap_grid_beta2, Beta2Oracle, OracleRoute, DIRECT_MAX_P};
pub use matrix_model::{gap_max_matrix_model_beta2, MatrixModelEstimate, QuadratureSpec};

use serde::{Deserialize, Serialize};

use crate::ensemble::{Beta, CovMatrix, EmpiricalSpectrum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    /// P(λ_max ≤ t).
    MaxBelowT,
    /// P(λ_min ≥ s).
    MinAboveS,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapQuery {
    pub kind: GapKind,
    pub threshold: f64,
    pub beta: Beta,
    pub spectrum: EmpiricalSpectrum,
    pub n: usize,
    pub p: usize,
}

impl GapQuery {
    pub fn new(kind: GapKind, threshold: f64, spectrum: EmpiricalSpectrum, n: usize) -> Self {
        let p = spectrum.p();
        Self { kind, threshold, beta: Beta::Complex, spectrum, n, p }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(Error::InvalidConfig(format!("threshold {} must be positive", self.threshold)));
        }
        if self.spectrum.p() != self.p {
            return Err(Error::DimensionMismatch(format!(
                "spectrum has {} eigenvalues, query says p = {}",
                self.spectrum.p(),
                self.p
            )));
        }
        if self.p == 0 || self.p > self.n {
            return Err(Error::InvalidConfig(format!("need 1 <= p <= n, got p = {}, n = {}", self.p, self.n)));
        }
        Ok(())
    }

    pub fn require_beta2(&self) -> Result<()> {
        if self.beta != Beta::Complex {
            return Err(Error::Unsupported(format!("exact gap probabilities need beta = 2, got {}", self.beta)));
        }
        Ok(())
    }

    /// `υ = β(n - p + 1 - 2/β)/2`, which is `n - p` for β = 2.
    pub fn upsilon(&self) -> f64 {
        let b = self.beta.as_f64();
        b * (self.n as f64 - self.p as f64 + 1.0 - 2.0 / b) / 2.0
    }
}

/// 1 if every eigenvalue of the Hermitian matrix is strictly positive,
/// 0 otherwise (also 0 if the eigensolver fails).
pub fn positive_definite_indicator(a: &CovMatrix) -> u8 {
    match a.eigenvalues() {
        Some(ev) if ev.iter().all(|&v| v > 0.0) => 1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use nalgebra::DMatrix;

    use super::*;

    #[test]
    fn indicator_examples() {
        assert_eq!(positive_definite_indicator(&CovMatrix::Real(DMatrix::identity(3, 3))), 1);
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1e-6]));
        assert_eq!(positive_definite_indicator(&CovMatrix::Real(a)), 0);
    }

    #[test]
    fn upsilon_beta2() {
        let q = GapQuery::new(GapKind::MaxBelowT, 1.0, EmpiricalSpectrum::identity(3), 7);
        assert_eq!(q.upsilon(), 4.0);
    }

    #[test]
    fn query_validation() {
        let mut q = GapQuery::new(GapKind::MaxBelowT, 1.0, EmpiricalSpectrum::identity(3), 2);
        assert!(q.validate().is_err());
        q.n = 3;
        assert!(q.validate().is_ok());
        q.threshold = -1.0;
        assert!(q.validate().is_err());
    }
}
