//! `P(λ_max ≤ t)` at β = 2 from the invariant n×n matrix-model integral
//!
//! `∫ dY |Δ(Y)|² e^{tr(iY+𝟙)} det(iY+𝟙)^{-n} Π_k det(𝟙 + (iY+𝟙)Λ_k/t)^{-1}`
//!
//! over Hermitian Y, reduced to the eigenvalues y of Y and normalized by
//! the same integral without the Λ factors (the `t → ∞` limit).
//!
//! On the real line the y-integrals converge only conditionally. With
//! `z = 1 + iy` every factor is analytic off the negative real axis, where
//! the poles `z = 0` and `z = -t/Λ_k` sit, and `e^z` decays to the left, so
//! each line is deformed onto the parabola `z(u) = μ(1 + iu)²` that wraps
//! the negative axis. There the integrand decays like `e^{-μu²}` and the
//! trapezoidal rule converges geometrically.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GapKind, GapQuery};
use crate::error::{Error, Result};

pub const MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Initial trapezoid step in the contour parameter.
    pub step: f64,
    /// The contour is cut at `|u| = cutoff`.
    pub cutoff: f64,
    /// μ in `z(u) = μ(1 + iu)²`.
    pub contour_scale: f64,
    /// Relative change between successive halvings that counts as converged.
    pub tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { step: 0.25, cutoff: 7.0, contour_scale: 1.0, tol: 1e-9, max_refinements: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixModelEstimate {
    pub value: f64,
    /// `|Im| / |value|` of the normalized integral.
    pub imag_residual: f64,
    /// Relative change at the last halving.
    pub error: f64,
    pub refinements: usize,
}

const IMAG_LIMIT: f64 = 1e-6;

pub fn gap_max_matrix_model_beta2(q: &GapQuery, quad: &QuadratureSpec) -> Result<MatrixModelEstimate> {
    q.validate()?;
    q.require_beta2()?;
    if q.kind != GapKind::MaxBelowT {
        return Err(Error::Unsupported("the matrix model covers the largest eigenvalue only".into()));
    }
    if q.n > MAX_N {
        return Err(Error::Unsupported(format!("matrix-model quadrature supports n <= {MAX_N}, got {}", q.n)));
    }
    if !(quad.step > 0.0 && quad.cutoff > 0.0 && quad.contour_scale > 0.0) {
        return Err(Error::InvalidConfig("quadrature step, cutoff and contour scale must be positive".into()));
    }
    let mut h = quad.step;
    let mut prev = evaluate(q, quad, h);
    let mut error = f64::INFINITY;
    for refinement in 1..=quad.max_refinements {
        h *= 0.5;
        let next = evaluate(q, quad, h);
        error = (next - prev).norm() / next.norm().max(f64::MIN_POSITIVE);
        prev = next;
        if error <= quad.tol {
            let imag_residual = prev.im.abs() / prev.norm().max(f64::MIN_POSITIVE);
            if imag_residual > IMAG_LIMIT {
                return Err(Error::QuadratureNotConverged { refinements: refinement, error: imag_residual });
            }
            return Ok(MatrixModelEstimate { value: prev.re, imag_residual, error, refinements: refinement });
        }
    }
    Err(Error::QuadratureNotConverged { refinements: quad.max_refinements, error })
}

/// Normalized integral at trapezoid step `h`.
fn evaluate(q: &GapQuery, quad: &QuadratureSpec, h: f64) -> Complex64 {
    let n = q.n as i32;
    let mu = quad.contour_scale;
    let m = (quad.cutoff / h).ceil() as i64;
    let one = Complex64::new(1.0, 0.0);
    let mut zs = Vec::new();
    let mut with = Vec::new();
    let mut without = Vec::new();
    for i in -m..=m {
        let u = i as f64 * h;
        let w = Complex64::new(1.0, u);
        let z = mu * w * w;
        let dz = Complex64::new(0.0, 2.0 * mu) * w;
        let base = dz * z.exp() * z.powi(-n);
        let lam = q.spectrum.lambdas.iter().fold(one, |acc, l| acc / (one + z * (l / q.threshold)));
        zs.push(z);
        without.push(base);
        with.push(base * lam);
    }
    let num = tensor_sum(&zs, &with, q.n);
    let den = tensor_sum(&zs, &without, q.n);
    num / den
}

/// `Σ Π_i f(u_i) Π_{i<j} (z_i - z_j)²` over the n-fold grid.
fn tensor_sum(zs: &[Complex64], f: &[Complex64], n: usize) -> Complex64 {
    let len = zs.len();
    let mut total = Complex64::new(0.0, 0.0);
    match n {
        1 => {
            for v in &f[..len] {
                total += v;
            }
        }
        2 => {
            for a in 0..len {
                for b in 0..len {
                    let d = zs[a] - zs[b];
                    total += f[a] * f[b] * d * d;
                }
            }
        }
        3 => {
            for a in 0..len {
                for b in 0..len {
                    let dab = zs[a] - zs[b];
                    let fab = f[a] * f[b] * dab * dab;
                    for c in 0..len {
                        let v = (zs[a] - zs[c]) * (zs[b] - zs[c]);
                        total += fab * f[c] * v * v;
                    }
                }
            }
        }
        _ => unreachable!("n is checked against MAX_N"),
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::EmpiricalSpectrum;

    #[test]
    fn one_by_one_is_exponential() {
        for t in [0.2, 1.0, 3.0] {
            let q = GapQuery::new(GapKind::MaxBelowT, t, EmpiricalSpectrum::identity(1), 1);
            let e = gap_max_matrix_model_beta2(&q, &QuadratureSpec::default()).unwrap();
            assert!((e.value - (1.0 - (-t).exp())).abs() < 1e-6, "t = {t}: {}", e.value);
            assert!(e.imag_residual < 1e-6);
        }
    }

    #[test]
    fn large_threshold_normalizes() {
        let q = GapQuery::new(GapKind::MaxBelowT, 2e3, EmpiricalSpectrum::identity(1), 2);
        let e = gap_max_matrix_model_beta2(&q, &QuadratureSpec::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_large_n_and_min_edge() {
        let q = GapQuery::new(GapKind::MaxBelowT, 1.0, EmpiricalSpectrum::identity(1), 4);
        assert!(gap_max_matrix_model_beta2(&q, &QuadratureSpec::default()).is_err());
        let q = GapQuery::new(GapKind::MinAboveS, 1.0, EmpiricalSpectrum::identity(1), 2);
        assert!(gap_max_matrix_model_beta2(&q, &QuadratureSpec::default()).is_err());
    }
}
