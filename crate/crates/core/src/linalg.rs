//! Dense helpers: equilibrated log-determinants and Hermitian spectra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Sign and log-magnitude of a determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet {
    pub sign: f64,
    pub log_abs: f64,
}

impl LogDet {
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }

    /// `self / other` as a plain number.
    pub fn ratio(&self, other: &LogDet) -> f64 {
        if self.sign == 0.0 {
            return 0.0;
        }
        self.sign * other.sign * (self.log_abs - other.log_abs).exp()
    }
}

/// Row then column max-abs scaling. Returns the scaled matrix and the log of
/// the product of the factors that were divided out.
fn equilibrate(a: &DMatrix<f64>) -> (DMatrix<f64>, f64) {
    let mut m = a.clone();
    let mut log_scale = 0.0;
    for mut row in m.row_iter_mut() {
        let s = row.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if s > 0.0 && s.is_finite() {
            row /= s;
            log_scale += s.ln();
        }
    }
    for mut col in m.column_iter_mut() {
        let s = col.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if s > 0.0 && s.is_finite() {
            col /= s;
            log_scale += s.ln();
        }
    }
    (m, log_scale)
}

/// Determinant in log space after row/column equilibration, by LU with
/// partial pivoting.
pub fn log_det(a: &DMatrix<f64>) -> LogDet {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let (m, log_scale) = equilibrate(a);
    let lu = m.lu();
    let u = lu.u();
    let mut sign = if lu.p().determinant::<f64>() < 0.0 { -1.0 } else { 1.0 };
    let mut log_abs = log_scale;
    for d in u.diagonal().iter() {
        if *d == 0.0 {
            return LogDet { sign: 0.0, log_abs: f64::NEG_INFINITY };
        }
        if *d < 0.0 {
            sign = -sign;
        }
        log_abs += d.abs().ln();
    }
    LogDet { sign, log_abs }
}

/// 1-norm condition number of the equilibrated matrix, computed from an
/// explicit inverse. Intended for the small (p <= 32) matrices of the
/// exact gap oracles.
pub fn condition_estimate(a: &DMatrix<f64>) -> f64 {
    let (m, _) = equilibrate(a);
    let norm1 = |x: &DMatrix<f64>| {
        x.column_iter()
            .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    match m.clone().try_inverse() {
        Some(inv) => {
            let k = norm1(&m) * norm1(&inv);
            if k.is_finite() {
                k
            } else {
                f64::INFINITY
            }
        }
        None => f64::INFINITY,
    }
}

/// Ascending eigenvalues of a real symmetric matrix; `None` on non-finite
/// input or output.
pub fn symmetric_eigenvalues(a: DMatrix<f64>) -> Option<Vec<f64>> {
    if a.iter().any(|v| !v.is_finite()) {
        return None;
    }
    sorted(a.symmetric_eigenvalues())
}

/// Ascending eigenvalues of a complex Hermitian matrix.
pub fn hermitian_eigenvalues(a: DMatrix<Complex64>) -> Option<Vec<f64>> {
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return None;
    }
    sorted(a.symmetric_eigenvalues())
}

fn sorted(v: DVector<f64>) -> Option<Vec<f64>> {
    let mut out: Vec<f64> = v.iter().copied().collect();
    if out.iter().any(|x| !x.is_finite()) {
        return None;
    }
    out.sort_by(f64::total_cmp);
    Some(out)
}
