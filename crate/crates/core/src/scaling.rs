//! Edge centering and rescaling of extreme eigenvalues, the variance-decay
//! condition on the population spectrum, and the first-order correction for
//! spectra that are not exactly mean-centred.

use serde::{Deserialize, Serialize};

use crate::ensemble::{Beta, EmpiricalSpectrum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    Max,
    Min,
}

impl Edge {
    pub fn as_str(self) -> &'static str {
        match self {
            Edge::Max => "max",
            Edge::Min => "min",
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Paper` uses `n`, `p` as given; `Adjusted` substitutes `n - 1/2`,
/// `p - 1/2`, which leaves the large-n limit unchanged. `Refined` is built
/// by [`refined_params`] only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    Paper,
    Adjusted,
    Refined,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    pub gamma: f64,
    pub edge: Edge,
    pub mu: f64,
    pub sigma: f64,
    pub nu: usize,
    pub mode: ScalingMode,
}

pub fn johnstone_params(n: usize, p: usize, edge: Edge, mode: ScalingMode) -> Result<ScalingParams> {
    if p == 0 {
        return Err(Error::InvalidConfig("p must be at least 1".into()));
    }
    if p > n {
        return Err(Error::InvalidConfig(format!("p = {p} exceeds n = {n}")));
    }
    let shift = match mode {
        ScalingMode::Paper => 0.0,
        ScalingMode::Adjusted => -0.5,
        ScalingMode::Refined => {
            return Err(Error::InvalidConfig("refined scaling needs β and the spectrum; use refined_params".into()))
        }
    };
    check_edge(n, p, edge)?;
    let nf = n as f64 + shift;
    let pf = p as f64 + shift;
    let gamma = (pf / nf).sqrt();
    let (mu, sigma) = match edge {
        Edge::Max => ((1.0 + gamma).powi(2) * nf, (1.0 + gamma).powf(4.0 / 3.0) * gamma.powf(-1.0 / 3.0) * nf.cbrt()),
        Edge::Min => ((1.0 - gamma).powi(2) * nf, -(1.0 - gamma).powf(4.0 / 3.0) * gamma.powf(-1.0 / 3.0) * nf.cbrt()),
    };
    Ok(ScalingParams { gamma, edge, mu, sigma, nu: n - p, mode })
}

fn check_edge(n: usize, p: usize, edge: Edge) -> Result<()> {
    if edge == Edge::Min && p == n {
        return Err(Error::DegenerateEdge(format!(
            "p = n = {n}: the smallest eigenvalue sits at the hard edge and has no soft-edge scaling"
        )));
    }
    Ok(())
}

/// Shift added to both `n` and `p` by [`refined_params`]: `1/2 - 1/β`, which
/// is `-1/2` for β = 1, `0` for β = 2 and `1/4` for β = 4.
pub fn refined_shift(beta: Beta) -> f64 {
    0.5 - 1.0 / beta.as_f64()
}

/// Finite-size refinement of the edge scaling that keeps the large-n limit:
/// `n`, `p` are shifted by [`refined_shift`], and the flat-spectrum edge is
/// replaced by the edge of the limiting spectrum for the population
/// eigenvalues `Λ/Λ̄` ([`spectral_edge`]). `mu` and `sigma` are in units of
/// `Λ̄` like the other modes, so [`center_rescale`] applies unchanged.
pub fn refined_params(n: usize, p: usize, beta: Beta, spectrum: &EmpiricalSpectrum, edge: Edge) -> Result<ScalingParams> {
    if p == 0 || p > n {
        return Err(Error::InvalidConfig(format!("need 1 <= p <= n, got p = {p}, n = {n}")));
    }
    check_edge(n, p, edge)?;
    let shift = refined_shift(beta);
    let nf = n as f64 + shift;
    let pf = p as f64 + shift;
    let rel: Vec<f64> = spectrum.lambdas.iter().map(|l| l / spectrum.lambda_bar).collect();
    let (mu, sigma) = spectral_edge(&rel, pf / nf, edge)?;
    let sign = match edge {
        Edge::Max => 1.0,
        Edge::Min => -1.0,
    };
    Ok(ScalingParams {
        gamma: (pf / nf).sqrt(),
        edge,
        mu: mu * nf,
        sigma: sign * sigma.abs() * nf.cbrt(),
        nu: n - p,
        mode: ScalingMode::Refined,
    })
}

/// Edge location and fluctuation scale of the limiting spectrum of
/// `W W† / n` for population eigenvalues `lambdas` (relative to their
/// reference level) at aspect ratio `gamma2 = p/n`.
///
/// Solves `γ² ⟨(λc/(1-λc))²⟩ = 1` for `c` on the branch below `1/λ_max`
/// (largest edge) or above `1/λ_min` (smallest edge); then
/// `μ = (1 + γ²⟨λc/(1-λc)⟩)/c` and `σ³ = (1 + γ²⟨(λc/(1-λc))³⟩)/c³`.
/// For a flat spectrum this is `μ = (1±γ)²`, `σ = ±(1±γ)^(4/3) γ^(-1/3)`.
pub fn spectral_edge(lambdas: &[f64], gamma2: f64, edge: Edge) -> Result<(f64, f64)> {
    if lambdas.is_empty() || lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(Error::InvalidSpectrum("edge equation needs positive eigenvalues".into()));
    }
    if !(gamma2 > 0.0) {
        return Err(Error::InvalidConfig(format!("aspect ratio {gamma2} must be positive")));
    }
    let k = lambdas.len() as f64;
    let moment = |c: f64, power: i32| lambdas.iter().map(|l| (l * c / (1.0 - l * c)).powi(power)).sum::<f64>() / k;
    let lmax = lambdas.iter().copied().fold(0.0, f64::max);
    let lmin = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    let excess = |c: f64| gamma2 * moment(c, 2) - 1.0;
    let c = match edge {
        Edge::Max => {
            // excess rises from -1 at c = 0 to +inf at 1/λ_max
            let (mut lo, mut hi) = (0.0, 1.0 / lmax);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if excess(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
        Edge::Min => {
            if gamma2 >= 1.0 {
                return Err(Error::DegenerateEdge("p >= n: the smallest edge is hard".into()));
            }
            // excess falls from +inf at 1/λ_min to γ² - 1 < 0 as c grows
            let lo0 = 1.0 / lmin;
            let mut hi = 2.0 * lo0;
            while excess(hi) > 0.0 {
                hi = lo0 + 2.0 * (hi - lo0);
            }
            let mut lo = lo0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if excess(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
    };
    let mu = (1.0 + gamma2 * moment(c, 1)) / c;
    let sigma = ((1.0 + gamma2 * moment(c, 3)) / (c * c * c)).cbrt();
    Ok((mu, sigma))
}

/// `χ = (x - μΛ̄) / (σΛ̄)`.
pub fn center_rescale(x: f64, params: &ScalingParams, lambda_bar: f64) -> Result<f64> {
    if params.sigma == 0.0 {
        return Err(Error::DegenerateEdge("scaling constant is zero".into()));
    }
    Ok((x - params.mu * lambda_bar) / (params.sigma * lambda_bar))
}

/// Inverse of [`center_rescale`].
pub fn uncenter(chi: f64, params: &ScalingParams, lambda_bar: f64) -> f64 {
    params.mu * lambda_bar + params.sigma * lambda_bar * chi
}

/// Diagnostics of how fast the spectrum approaches a multiple of the
/// identity. `alpha_eff` is `None` when `Var_s = 0` (infinite exponent).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: usize,
    pub n: usize,
    pub var_s: f64,
    pub alpha_eff: Option<f64>,
    /// `γ^(2α-1) (1+γ)^(2/3) n^(2/3-α)`; zero for a flat spectrum.
    pub decay_factor: f64,
    /// `n^(2/3) Var_s`.
    pub n23_var: f64,
    pub pass: bool,
}

pub const ALPHA_THRESHOLD: f64 = 2.0 / 3.0;

pub fn variance_condition(spectrum: &EmpiricalSpectrum, n: usize) -> ConditionReport {
    let p = spectrum.p();
    let var_s = spectrum.variance();
    let nf = n as f64;
    let gamma = (p as f64 / nf).sqrt();
    // relative to the level, so that Λ and cΛ give the same verdict
    let rel = var_s / (spectrum.mean() * spectrum.mean());
    let alpha_eff = if rel > 0.0 && p > 1 { Some(-rel.ln() / (p as f64).ln()) } else { None };
    let (decay_factor, pass) = match alpha_eff {
        Some(a) => (
            gamma.powf(2.0 * a - 1.0) * (1.0 + gamma).powf(2.0 / 3.0) * nf.powf(2.0 / 3.0 - a),
            a > ALPHA_THRESHOLD,
        ),
        None => (0.0, true),
    };
    ConditionReport { p, n, var_s, alpha_eff, decay_factor, n23_var: nf.powf(2.0 / 3.0) * rel, pass }
}

/// The first-order term `-(tr Λ⁽¹⁾ / (p^α p Λ̄)) t E0'(t)` alone.
pub fn first_order_term<F: Fn(f64) -> f64>(e0: F, spectrum: &EmpiricalSpectrum, t: f64) -> f64 {
    let Some(alpha) = spectrum.alpha else {
        return 0.0;
    };
    let tr = spectrum.trace_lambda1();
    if tr == 0.0 {
        return 0.0;
    }
    let p = spectrum.p() as f64;
    let coeff = tr / (p.powf(alpha) * p * spectrum.lambda_bar);
    -coeff * t * derivative(&e0, t)
}

/// `E0(t)` plus the first-order term. With a mean-centred spectrum the term
/// vanishes and `E0(t)` is returned unchanged.
pub fn first_order_correction<F: Fn(f64) -> f64>(e0: F, spectrum: &EmpiricalSpectrum, t: f64) -> f64 {
    let base = e0(t);
    base + first_order_term(e0, spectrum, t)
}

/// Central difference at relative step 1e-5, Richardson-extrapolated with the
/// half step.
fn derivative<F: Fn(f64) -> f64>(f: &F, t: f64) -> f64 {
    let h = 1e-5 * t.abs().max(1e-300);
    let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
    let d2 = (f(t + 0.5 * h) - f(t - 0.5 * h)) / h;
    (4.0 * d2 - d1) / 3.0
}
