//! `F₂(χ) = det(I - K_Ai)` on `L²(χ, ∞)` by Gauss-Legendre discretization of
//! the Airy kernel (Nyström method). Independent of the Painlevé route.

use nalgebra::DMatrix;

use super::airy::airy_unchecked;
use crate::linalg::log_det;
use crate::quadrature::GaussLegendre;

/// Below this order the discretization is not trusted to 1e-6.
pub const MIN_ORDER: usize = 30;
/// The kernel is below 1e-25 beyond this point.
const CUTOFF: f64 = 12.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FredholmEstimate {
    pub value: f64,
    /// Set when the quadrature order is below [`MIN_ORDER`].
    pub low_order: bool,
}

/// Airy kernel `(Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y)`, with the diagonal
/// limit `Ai'(x)² - x Ai(x)²`.
pub fn airy_kernel(x: f64, y: f64) -> f64 {
    let (ax, apx) = airy_unchecked(x);
    if x == y {
        return apx * apx - x * ax * ax;
    }
    let (ay, apy) = airy_unchecked(y);
    (ax * apy - apx * ay) / (x - y)
}

pub fn fredholm_f2_oracle(chi: f64, order: usize) -> FredholmEstimate {
    let low_order = order < MIN_ORDER;
    if chi >= CUTOFF {
        return FredholmEstimate { value: 1.0, low_order };
    }
    let gl = GaussLegendre::new(order.max(1));
    let pts: Vec<(f64, f64)> = gl.mapped(chi, CUTOFF).collect();
    let m = pts.len();
    let airy: Vec<(f64, f64)> = pts.iter().map(|&(x, _)| airy_unchecked(x)).collect();
    let a = DMatrix::from_fn(m, m, |i, j| {
        let (xi, wi) = pts[i];
        let (xj, wj) = pts[j];
        let k = if i == j {
            let (a, ap) = airy[i];
            ap * ap - xi * a * a
        } else {
            let (ai, api) = airy[i];
            let (aj, apj) = airy[j];
            (ai * apj - api * aj) / (xi - xj)
        };
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - wi.sqrt() * k * wj.sqrt()
    });
    let value = log_det(&a).value().clamp(0.0, 1.0);
    FredholmEstimate { value, low_order }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_right_is_one() {
        let e = fredholm_f2_oracle(6.0, 40);
        assert!((1.0 - e.value) < 1e-7 && (1.0 - e.value) >= 0.0);
        assert!(!e.low_order);
    }

    #[test]
    fn converges_in_order() {
        let a = fredholm_f2_oracle(-4.0, 30).value;
        let b = fredholm_f2_oracle(-4.0, 60).value;
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }

    #[test]
    fn value_at_zero() {
        let v = fredholm_f2_oracle(0.0, 60).value;
        assert!((v - 0.96937).abs() < 1e-5, "{v}");
    }

    #[test]
    fn low_order_is_flagged() {
        assert!(fredholm_f2_oracle(0.0, 10).low_order);
    }

    #[test]
    fn kernel_is_continuous_on_diagonal() {
        let d = airy_kernel(0.3, 0.3);
        let off = airy_kernel(0.3, 0.3 + 1e-6);
        assert!((d - off).abs() < 1e-6);
    }
}
