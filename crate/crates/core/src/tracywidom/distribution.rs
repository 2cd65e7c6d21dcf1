use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::painleve::{solve_hastings_mcleod, PainleveSolution};
use crate::ensemble::Beta;
use crate::quadrature::GaussLegendre;

pub const TABLE_MIN: f64 = -10.0;
pub const TABLE_MAX: f64 = 6.0;
pub const TABLE_STEP: f64 = 0.01;

/// Normalizations of the β = 4 law, written as `F₄(χ) = G(cχ)` with
/// `G(s) = cosh(I(s)/2) sqrt(F₂(s))`. `Sqrt2` is the original `c = √2`,
/// `Unscaled` is `c = 1`. `SoftEdge` is `c = 2^(2/3)`, the soft-edge limit of
/// the quaternion ensemble under the weight `exp(-(β/2) tr WW†)` with the
/// common edge scaling `μ±`, `σ±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GseConvention {
    Sqrt2,
    Unscaled,
    SoftEdge,
}

impl GseConvention {
    pub const ALL: [GseConvention; 3] = [GseConvention::Sqrt2, GseConvention::Unscaled, GseConvention::SoftEdge];

    /// The convention with the smallest KS distance on simulated quaternion
    /// ensembles (see the acceptance suite).
    pub const DEFAULT: GseConvention = GseConvention::SoftEdge;

    pub fn as_str(self) -> &'static str {
        match self {
            GseConvention::Sqrt2 => "sqrt2",
            GseConvention::Unscaled => "unscaled",
            GseConvention::SoftEdge => "soft_edge",
        }
    }

    /// Argument scale `c` in `F₄(χ) = G(cχ)`.
    pub fn argument_scale(self) -> f64 {
        match self {
            GseConvention::Sqrt2 => std::f64::consts::SQRT_2,
            GseConvention::Unscaled => 1.0,
            GseConvention::SoftEdge => 2f64.powf(2.0 / 3.0),
        }
    }
}

/// A value of a Tracy-Widom function together with a flag telling whether
/// it came from the tail asymptotics rather than the table range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwValue {
    pub value: f64,
    pub extrapolated: bool,
}

/// Shared Hastings-McLeod solution on [-15, 8], step 0.005.
pub fn default_solution() -> Arc<PainleveSolution> {
    static SOL: OnceLock<Arc<PainleveSolution>> = OnceLock::new();
    SOL.get_or_init(|| {
        Arc::new(solve_hastings_mcleod(-15.0, 8.0, 0.005).expect("default Painleve configuration is valid"))
    })
    .clone()
}

/// Tracy-Widom law `F_β` with its density.
#[derive(Clone, Debug)]
pub struct TWDistribution {
    beta: Beta,
    convention: GseConvention,
    solution: Arc<PainleveSolution>,
    pub chi_grid: Vec<f64>,
    pub cdf_table: Vec<f64>,
    pub pdf_table: Vec<f64>,
}

impl TWDistribution {
    pub fn new(beta: Beta) -> Self {
        Self::with_convention(beta, GseConvention::DEFAULT)
    }

    pub fn with_convention(beta: Beta, convention: GseConvention) -> Self {
        Self::from_solution(beta, convention, default_solution())
    }

    pub fn from_solution(beta: Beta, convention: GseConvention, solution: Arc<PainleveSolution>) -> Self {
        let mut d = Self {
            beta,
            convention,
            solution,
            chi_grid: Vec::new(),
            cdf_table: Vec::new(),
            pdf_table: Vec::new(),
        };
        let n = ((TABLE_MAX - TABLE_MIN) / TABLE_STEP).round() as usize;
        d.chi_grid = (0..=n).map(|i| TABLE_MIN + TABLE_STEP * i as f64).collect();
        // running max removes last-bit rounding wiggles near 1
        d.cdf_table = d
            .chi_grid
            .iter()
            .scan(0.0f64, |m, &c| {
                *m = m.max(d.cdf_raw(c));
                Some(*m)
            })
            .collect();
        d.pdf_table = d.chi_grid.iter().map(|&c| d.pdf_raw(c)).collect();
        d
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn convention(&self) -> GseConvention {
        self.convention
    }

    pub fn solution(&self) -> &PainleveSolution {
        &self.solution
    }

    fn gse_scale(&self) -> f64 {
        match self.beta {
            Beta::Quaternion => self.convention.argument_scale(),
            _ => 1.0,
        }
    }

    fn cdf_raw(&self, chi: f64) -> f64 {
        let c = self.gse_scale();
        let pt = self.solution.at(c * chi);
        let v = match self.beta {
            Beta::Complex => (-pt.int_q2_weighted).exp(),
            Beta::Real => (-0.5 * (pt.int_q + pt.int_q2_weighted)).exp(),
            Beta::Quaternion => (0.5 * pt.int_q).cosh() * (-0.5 * pt.int_q2_weighted).exp(),
        };
        v.clamp(0.0, 1.0)
    }

    fn pdf_raw(&self, chi: f64) -> f64 {
        let c = self.gse_scale();
        let pt = self.solution.at(c * chi);
        let v = match self.beta {
            Beta::Complex => (-pt.int_q2_weighted).exp() * pt.int_q2,
            Beta::Real => (-0.5 * (pt.int_q + pt.int_q2_weighted)).exp() * 0.5 * (pt.q + pt.int_q2),
            Beta::Quaternion => {
                let half = 0.5 * pt.int_q;
                c * (-0.5 * pt.int_q2_weighted).exp() * 0.5 * (pt.int_q2 * half.cosh() - pt.q * half.sinh())
            }
        };
        v.max(0.0)
    }

    pub fn cdf_checked(&self, chi: f64) -> TwValue {
        TwValue { value: self.cdf(chi), extrapolated: !(TABLE_MIN..=TABLE_MAX).contains(&chi) }
    }

    pub fn pdf_checked(&self, chi: f64) -> TwValue {
        TwValue { value: self.pdf_raw(chi), extrapolated: !(TABLE_MIN..=TABLE_MAX).contains(&chi) }
    }

    /// Inside the table: cubic Hermite interpolation with the density as
    /// slope, clamped to the cell's table values so that the result is
    /// nondecreasing. Outside: the closed form, kept monotone at the seams.
    pub fn cdf(&self, chi: f64) -> f64 {
        let last = self.cdf_table.len() - 1;
        if chi < TABLE_MIN {
            return self.cdf_raw(chi).min(self.cdf_table[0]);
        }
        if chi >= TABLE_MAX {
            return self.cdf_raw(chi).max(self.cdf_table[last]);
        }
        let u = (chi - TABLE_MIN) / TABLE_STEP;
        let i = (u.floor() as usize).min(last - 1);
        let t = u - i as f64;
        let (c0, c1) = (self.cdf_table[i], self.cdf_table[i + 1]);
        let (d0, d1) = (self.pdf_table[i] * TABLE_STEP, self.pdf_table[i + 1] * TABLE_STEP);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * c0 + (t3 - 2.0 * t2 + t) * d0 + (-2.0 * t3 + 3.0 * t2) * c1 + (t3 - t2) * d1;
        v.clamp(c0, c1)
    }

    pub fn pdf(&self, chi: f64) -> f64 {
        self.pdf_raw(chi)
    }

    /// Inverse CDF by bisection; `u` is clamped into (0, 1).
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(1e-300, 1.0 - 1e-16);
        let (mut lo, mut hi) = (-30.0, 14.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf_raw(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-13 {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// `∫ χ^k f(χ) dχ` over [-16, 10].
    pub fn raw_moment(&self, k: i32) -> f64 {
        let gl = GaussLegendre::new(20);
        gl.composite(-16.0, 10.0, 260, |x| x.powi(k) * self.pdf_raw(x))
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1) / self.raw_moment(0)
    }

    pub fn variance(&self) -> f64 {
        let m0 = self.raw_moment(0);
        let m1 = self.raw_moment(1) / m0;
        self.raw_moment(2) / m0 - m1 * m1
    }
}

fn cached(beta: Beta) -> &'static TWDistribution {
    static TABLES: OnceLock<[TWDistribution; 3]> = OnceLock::new();
    let t = TABLES.get_or_init(|| Beta::ALL.map(TWDistribution::new));
    match beta {
        Beta::Real => &t[0],
        Beta::Complex => &t[1],
        Beta::Quaternion => &t[2],
    }
}

/// Shared default-convention distribution for `beta`.
pub fn tw_distribution(beta: Beta) -> &'static TWDistribution {
    cached(beta)
}

pub fn tw_cdf(beta: Beta, chi: f64) -> f64 {
    cached(beta).cdf(chi)
}

pub fn tw_pdf(beta: Beta, chi: f64) -> f64 {
    cached(beta).pdf(chi)
}
