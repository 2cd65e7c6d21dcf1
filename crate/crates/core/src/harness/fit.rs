//! Location/scale adjustment of rescaled samples within finite-size bounds.

use serde::{Deserialize, Serialize};

use super::stats::ks_sorted;

/// Search box for the fit: `|shift| <= shift_max`, `|κ - 1| <= kappa_dev`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitBounds {
    pub shift_max: f64,
    pub kappa_dev: f64,
}

/// Adjusted samples are `(χ - shift) / κ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocationScaleFit {
    pub shift: f64,
    pub kappa: f64,
    pub ks: f64,
    /// The optimum touches the search box, so the adjustment may not be a
    /// small finite-size correction.
    pub at_boundary: bool,
}

const GRID: usize = 41;
const ZOOM_GRID: usize = 11;
const ZOOM_ROUNDS: usize = 10;
const BOUNDARY_FRACTION: f64 = 0.01;
const KAPPA_FLOOR: f64 = 0.05;

fn objective<F: Fn(f64) -> f64>(sorted: &[f64], cdf: &F, shift: f64, kappa: f64, buf: &mut Vec<f64>) -> f64 {
    buf.clear();
    buf.extend(sorted.iter().map(|x| (x - shift) / kappa));
    ks_sorted(buf, cdf)
}

/// Minimizes the KS distance to `cdf` over the bounds: a joint grid over
/// the whole box, then grids on boxes shrinking around the best point. The
/// KS distance is piecewise smooth with many kinks, so coordinate or
/// derivative-based searches stall.
pub fn fit_location_scale<F: Fn(f64) -> f64>(samples: &[f64], cdf: F, bounds: FitBounds) -> LocationScaleFit {
    assert!(!samples.is_empty(), "fit on an empty sample");
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut buf = Vec::with_capacity(sorted.len());
    let (s_lo, s_hi) = (-bounds.shift_max.abs(), bounds.shift_max.abs());
    let (k_lo, k_hi) = ((1.0 - bounds.kappa_dev.abs()).max(KAPPA_FLOOR), 1.0 + bounds.kappa_dev.abs());

    let mut shift = 0.0f64.clamp(s_lo, s_hi);
    let mut kappa = 1.0f64.clamp(k_lo, k_hi);
    let mut best = objective(&sorted, &cdf, shift, kappa, &mut buf);
    let (mut hs, mut hk) = ((s_hi - s_lo) / 2.0, (k_hi - k_lo) / 2.0);
    let (mut cs, mut ck) = (0.5 * (s_lo + s_hi), 0.5 * (k_lo + k_hi));
    let mut grid = GRID;
    for _ in 0..=ZOOM_ROUNDS {
        for i in 0..grid {
            let s = (cs - hs + 2.0 * hs * i as f64 / (grid - 1) as f64).clamp(s_lo, s_hi);
            for j in 0..grid {
                let k = (ck - hk + 2.0 * hk * j as f64 / (grid - 1) as f64).clamp(k_lo, k_hi);
                let v = objective(&sorted, &cdf, s, k, &mut buf);
                if v < best {
                    best = v;
                    shift = s;
                    kappa = k;
                }
            }
        }
        // next box spans two cells of the current grid around the best point
        hs *= 2.0 / (grid - 1) as f64;
        hk *= 2.0 / (grid - 1) as f64;
        cs = shift;
        ck = kappa;
        grid = ZOOM_GRID;
    }
    let near = |x: f64, edge: f64, span: f64| (x - edge).abs() <= BOUNDARY_FRACTION * span;
    let at_boundary = (s_hi > s_lo && (near(shift, s_lo, s_hi - s_lo) || near(shift, s_hi, s_hi - s_lo)))
        || (k_hi > k_lo && (near(kappa, k_lo, k_hi - k_lo) || near(kappa, k_hi, k_hi - k_lo)));
    LocationScaleFit { shift, kappa, ks: best, at_boundary }
}
