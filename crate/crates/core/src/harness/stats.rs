//! Empirical distribution functions, Kolmogorov-Smirnov distance and density
//! histograms.

use serde::{Deserialize, Serialize};

use crate::tracywidom::TWDistribution;

/// Right-continuous empirical CDF of a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.sorted.partition_point(|&v| v <= x);
        k as f64 / self.sorted.len() as f64
    }
}

/// Panics on an empty sample or on NaN entries.
pub fn ecdf(samples: &[f64]) -> Ecdf {
    assert!(!samples.is_empty(), "empirical CDF of an empty sample");
    let mut sorted = samples.to_vec();
    assert!(sorted.iter().all(|v| !v.is_nan()), "NaN in sample");
    sorted.sort_by(f64::total_cmp);
    Ecdf { sorted }
}

/// `sup_x |F(x) - e(x)|`, attained at a sample point from the left or the
/// right.
pub fn ks_distance<F: Fn(f64) -> f64>(e: &Ecdf, cdf: F) -> f64 {
    ks_sorted(&e.sorted, cdf)
}

pub(crate) fn ks_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < sorted.len() {
        // step over ties so that e⁻ and e⁺ are evaluated at the same x
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let f = cdf(sorted[i]);
        d = d.max((f - i as f64 / n).abs()).max(((j + 1) as f64 / n - f).abs());
        i = j + 1;
    }
    d
}

/// Cubic Hermite interpolation of a Tracy-Widom CDF on a fine grid, used
/// where many millions of evaluations are needed (KS fits). Error is below
/// 1e-11 on the grid range; outside it the value is clamped to 0 or 1.
#[derive(Clone, Debug)]
pub struct TabulatedCdf {
    lo: f64,
    step: f64,
    f: Vec<f64>,
    df: Vec<f64>,
}

impl TabulatedCdf {
    pub const LO: f64 = -16.0;
    pub const HI: f64 = 10.0;
    const STEP: f64 = 0.005;

    pub fn new(d: &TWDistribution) -> Self {
        let n = ((Self::HI - Self::LO) / Self::STEP).round() as usize;
        let xs: Vec<f64> = (0..=n).map(|i| Self::LO + Self::STEP * i as f64).collect();
        Self {
            lo: Self::LO,
            step: Self::STEP,
            f: xs.iter().map(|&x| d.cdf(x)).collect(),
            df: xs.iter().map(|&x| d.pdf(x)).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.lo) / self.step;
        if !(u > 0.0) {
            return if x.is_nan() { f64::NAN } else { self.f[0] };
        }
        let i = u.floor() as usize;
        if i + 1 >= self.f.len() {
            return self.f[self.f.len() - 1];
        }
        let s = u - i as f64;
        let h = self.step;
        let (s2, s3) = (s * s, s * s * s);
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * self.f[i]
            + (s3 - 2.0 * s2 + s) * h * self.df[i]
            + (-2.0 * s3 + 3.0 * s2) * self.f[i + 1]
            + (s3 - s2) * h * self.df[i + 1];
        v.clamp(0.0, 1.0)
    }
}

/// Area-normalized histogram on equal-width bins spanning the sample range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// `Σ density · width`, which is 1 up to rounding.
    pub fn area(&self) -> f64 {
        self.edges.windows(2).zip(&self.density).map(|(w, d)| (w[1] - w[0]) * d).sum()
    }
}

pub fn pdf_histogram(samples: &[f64], bins: usize) -> Histogram {
    assert!(bins >= 1, "need at least one bin");
    assert!(!samples.is_empty(), "histogram of an empty sample");
    let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in samples {
        let k = (((x - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let edges: Vec<f64> = (0..=bins).map(|k| if k == bins { hi } else { lo + width * k as f64 }).collect();
    let total = samples.len() as f64;
    let density = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (total * (w[1] - w[0])))
        .collect();
    Histogram { edges, density }
}
