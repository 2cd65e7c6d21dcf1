//! `P(λ_max ≤ t)` and `P(λ_min ≥ s)` for complex correlated Wishart matrices
//! as a ratio of p×p determinants.
//!
//! The joint eigenvalue density is proportional to
//! `Δ(x) det[e^{-x_j/Λ_k}] Π x_j^ν`, so by Andréief's identity the gap
//! probability is `det[∫_I x^(ν+j-1) e^{-x/Λ_k} dx] / det[∫_0^∞ ...]`.
//!
//! The direct route evaluates those integrals as incomplete gamma
//! functions. Its columns become nearly parallel when two Λ_k approach each
//! other, so a second ("confluent") route replaces the columns
//! `e^{-xθ_k}`, `θ_k = 1/Λ_k`, by their divided differences in θ and the
//! monomial rows by orthonormal Laguerre polynomials. Both replacements are
//! triangular changes of basis that cancel in the ratio, and the divided
//! differences stay well defined for equal θ.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{GapKind, GapQuery};
use crate::error::{Error, Result};
use crate::linalg::{condition_estimate, log_det, LogDet};
use crate::quadrature::GaussLegendre;
use crate::special::{gamma_p_int, gamma_q_int};

/// Largest p accepted by the direct route.
pub const DIRECT_MAX_P: usize = 12;
/// Above this condition estimate the auto route switches to confluent.
const AUTO_SWITCH: f64 = 1e6;
/// Hard refusal threshold for any determinant.
const COND_LIMIT: f64 = 1e12;
const GL_ORDER: usize = 20;
/// Largest `x (θ_max - θ_min)` over the integration range; beyond it the
/// divided-difference columns lose range.
const SPREAD_LIMIT: f64 = 600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleRoute {
    Direct,
    Confluent,
}

#[derive(Clone, Debug)]
enum Engine {
    Direct {
        /// Λ_k / Λ_ref
        lambdas: Vec<f64>,
        /// `det[Λ_k^(j-1)]`
        denominator: LogDet,
    },
    Confluent(Confluent),
}

/// Exact β = 2 gap probabilities for one spectrum and sample size, with
/// the threshold-independent work done once.
#[derive(Clone, Debug)]
pub struct Beta2Oracle {
    p: usize,
    nu: usize,
    lambda_ref: f64,
    engine: Engine,
}

impl Beta2Oracle {
    /// Picks the direct route when it is well conditioned, confluent
    /// otherwise.
    pub fn new(lambdas: &[f64], n: usize) -> Result<Self> {
        check_inputs(lambdas, n)?;
        if lambdas.len() <= DIRECT_MAX_P {
            if let Ok(o) = Self::with_route(lambdas, n, OracleRoute::Direct) {
                if o.direct_condition() <= AUTO_SWITCH {
                    return Ok(o);
                }
            }
        }
        Self::with_route(lambdas, n, OracleRoute::Confluent)
    }

    pub fn with_route(lambdas: &[f64], n: usize, route: OracleRoute) -> Result<Self> {
        check_inputs(lambdas, n)?;
        let p = lambdas.len();
        let nu = n - p;
        let lambda_ref = lambdas.iter().sum::<f64>() / p as f64;
        let scaled: Vec<f64> = lambdas.iter().map(|l| l / lambda_ref).collect();
        let engine = match route {
            OracleRoute::Direct => {
                if p > DIRECT_MAX_P {
                    return Err(Error::Unsupported(format!(
                        "direct route supports p <= {DIRECT_MAX_P}, got {p}"
                    )));
                }
                for j in 0..p {
                    for k in j + 1..p {
                        let gap = (scaled[j] - scaled[k]).abs() / scaled[j].max(scaled[k]);
                        if gap < 1e-8 {
                            return Err(Error::IllConditioned { condition: f64::INFINITY });
                        }
                    }
                }
                Engine::Direct { denominator: vandermonde(&scaled), lambdas: scaled }
            }
            OracleRoute::Confluent => Engine::Confluent(Confluent::new(&scaled, nu)?),
        };
        Ok(Self { p, nu, lambda_ref, engine })
    }

    pub fn route(&self) -> OracleRoute {
        match self.engine {
            Engine::Direct { .. } => OracleRoute::Direct,
            Engine::Confluent(_) => OracleRoute::Confluent,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    /// Condition estimate of the direct-route matrix at `t → ∞`.
    fn direct_condition(&self) -> f64 {
        match &self.engine {
            Engine::Direct { lambdas, .. } => condition_estimate(&direct_matrix(lambdas, |_, _| 1.0)),
            Engine::Confluent(_) => f64::NAN,
        }
    }

    /// `P(λ_max ≤ t)`.
    pub fn max_below(&self, t: f64) -> Result<f64> {
        self.gap(GapKind::MaxBelowT, t)
    }

    /// `P(λ_min ≥ s)`.
    pub fn min_above(&self, s: f64) -> Result<f64> {
        self.gap(GapKind::MinAboveS, s)
    }

    pub fn gap(&self, kind: GapKind, threshold: f64) -> Result<f64> {
        if threshold.is_nan() {
            return Err(Error::InvalidConfig("threshold is NaN".into()));
        }
        if threshold <= 0.0 {
            return Ok(match kind {
                GapKind::MaxBelowT => 0.0,
                GapKind::MinAboveS => 1.0,
            });
        }
        let x = threshold / self.lambda_ref;
        let value = match &self.engine {
            Engine::Direct { lambdas, denominator } => {
                let nu = self.nu as u32;
                let m = match kind {
                    GapKind::MaxBelowT => direct_matrix(lambdas, |j, l| gamma_p_int(nu + j, x / l)),
                    GapKind::MinAboveS => direct_matrix(lambdas, |j, l| gamma_q_int(nu + j, x / l)),
                };
                // a column that underflowed entirely makes the determinant vanish
                if m.column_iter().any(|c| c.iter().all(|v| *v == 0.0)) {
                    return Ok(0.0);
                }
                let cond = condition_estimate(&m);
                if cond > COND_LIMIT {
                    // Far in the tail every column tends to the same power of
                    // the threshold and the direct basis cancels. The
                    // confluent quadrature has no such cancellation.
                    return match Confluent::new(lambdas, self.nu) {
                        Ok(c) => Ok(c.gap(kind, x)?.clamp(0.0, 1.0)),
                        Err(_) => Err(Error::IllConditioned { condition: cond }),
                    };
                }
                log_det(&m).ratio(denominator)
            }
            Engine::Confluent(c) => c.gap(kind, x)?,
        };
        Ok(value.clamp(0.0, 1.0))
    }
}

fn check_inputs(lambdas: &[f64], n: usize) -> Result<()> {
    let p = lambdas.len();
    if p == 0 || p > n {
        return Err(Error::InvalidConfig(format!("need 1 <= p <= n, got p = {p}, n = {n}")));
    }
    if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::InvalidSpectrum(format!("eigenvalue {l} is not positive")));
    }
    Ok(())
}

/// `m[j][k] = Λ_k^j f(j+1, Λ_k)` for `j = 0..p`.
fn direct_matrix<F: Fn(u32, f64) -> f64>(lambdas: &[f64], f: F) -> DMatrix<f64> {
    let p = lambdas.len();
    DMatrix::from_fn(p, p, |j, k| lambdas[k].powi(j as i32) * f(j as u32 + 1, lambdas[k]))
}

/// `det[Λ_k^(j-1)] = Π_{j<k} (Λ_k - Λ_j)`.
fn vandermonde(lambdas: &[f64]) -> LogDet {
    let mut sign = 1.0;
    let mut log_abs = 0.0;
    for j in 0..lambdas.len() {
        for k in j + 1..lambdas.len() {
            let d = lambdas[k] - lambdas[j];
            if d < 0.0 {
                sign = -sign;
            }
            log_abs += d.abs().ln();
        }
    }
    LogDet { sign, log_abs }
}

#[derive(Clone, Debug)]
struct Confluent {
    p: usize,
    nu: usize,
    thetas: Vec<f64>,
    theta_max: f64,
    theta_ref: f64,
    /// subtracted from the log of the scalar weight to keep it in range
    log_shift: f64,
    width: f64,
    /// `prefix[m]` integrates over panels `0..m`, `suffix[m]` over `m..`
    prefix: Vec<DMatrix<f64>>,
    suffix: Vec<DMatrix<f64>>,
    total: LogDet,
    gl: GaussLegendre,
}

impl Confluent {
    fn new(lambdas: &[f64], nu: usize) -> Result<Self> {
        let p = lambdas.len();
        let mut thetas: Vec<f64> = lambdas.iter().map(|l| 1.0 / l).collect();
        thetas.sort_by(|a, b| b.total_cmp(a));
        let theta_max = thetas[0];
        let theta_min = thetas[p - 1];
        let theta_ref = thetas.iter().sum::<f64>() / p as f64;
        let a = (nu + 2 * p) as f64;
        let t_full = (a + 10.0 * a.sqrt() + 40.0) / theta_min;
        if t_full * (theta_max - theta_min) > SPREAD_LIMIT {
            return Err(Error::Unsupported(format!(
                "spectrum spread {:.3e} too wide for the confluent route; use the direct route",
                theta_max / theta_min
            )));
        }
        let panels = (t_full * theta_max).ceil().max(8.0) as usize;
        let width = t_full / panels as f64;
        // peak of x^ν e^{-xθ_max}
        let log_shift = if nu == 0 {
            0.0
        } else {
            let x = nu as f64 / theta_max;
            nu as f64 * x.ln() - x * theta_max
        };
        let mut c = Self {
            p,
            nu,
            thetas,
            theta_max,
            theta_ref,
            log_shift,
            width,
            prefix: Vec::new(),
            suffix: Vec::new(),
            total: LogDet { sign: 0.0, log_abs: f64::NEG_INFINITY },
            gl: GaussLegendre::new(GL_ORDER),
        };
        let pieces: Vec<DMatrix<f64>> =
            (0..panels).map(|m| c.integrate(m as f64 * width, (m + 1) as f64 * width)).collect();
        let mut prefix = vec![DMatrix::zeros(p, p)];
        for piece in &pieces {
            let next = prefix.last().unwrap() + piece;
            prefix.push(next);
        }
        let mut suffix = vec![DMatrix::zeros(p, p); panels + 1];
        for m in (0..panels).rev() {
            suffix[m] = &suffix[m + 1] + &pieces[m];
        }
        let full = &prefix[panels];
        let cond = condition_estimate(full);
        if cond > COND_LIMIT {
            return Err(Error::IllConditioned { condition: cond });
        }
        c.total = log_det(full);
        c.prefix = prefix;
        c.suffix = suffix;
        Ok(c)
    }

    fn panels(&self) -> usize {
        self.prefix.len() - 1
    }

    fn gap(&self, kind: GapKind, x: f64) -> Result<f64> {
        let end = self.width * self.panels() as f64;
        let m = ((x / self.width).floor() as usize).min(self.panels());
        let num = match kind {
            GapKind::MaxBelowT => {
                if x >= end {
                    return Ok(1.0);
                }
                &self.prefix[m] + self.integrate(m as f64 * self.width, x)
            }
            GapKind::MinAboveS => {
                if x >= end {
                    return Ok(0.0);
                }
                &self.suffix[m + 1] + self.integrate(x, (m + 1) as f64 * self.width)
            }
        };
        Ok(log_det(&num).ratio(&self.total))
    }

    /// Entry `(j, k)` is `∫_a^b x^ν ℓ_j(θ_ref x) |D_k(x)| dx`, where `ℓ_j` is
    /// the orthonormal Laguerre polynomial and `D_k` the divided difference
    /// of `θ ↦ e^{-xθ}` on the first `k + 1` nodes.
    fn integrate(&self, a: f64, b: f64) -> DMatrix<f64> {
        let p = self.p;
        let mut out = DMatrix::zeros(p, p);
        if b <= a {
            return out;
        }
        let mut ell = vec![0.0; p];
        for (x, w) in self.gl.mapped(a, b) {
            let log_weight = if self.nu == 0 { 0.0 } else { self.nu as f64 * x.ln() };
            let scale = w * (log_weight - x * self.theta_max - self.log_shift).exp();
            if scale == 0.0 {
                continue;
            }
            self.laguerre(self.theta_ref * x, &mut ell);
            let d = self.divided_differences(x);
            for k in 0..p {
                let dk = scale * d[k];
                for j in 0..p {
                    out[(j, k)] += ell[j] * dk;
                }
            }
        }
        out
    }

    fn laguerre(&self, y: f64, out: &mut [f64]) {
        let nu = self.nu as f64;
        out[0] = 1.0;
        if out.len() > 1 {
            out[1] = (1.0 + nu - y) / (1.0 + nu).sqrt();
        }
        for j in 1..out.len() - 1 {
            let jf = j as f64;
            out[j + 1] = ((2.0 * jf + 1.0 + nu - y) * out[j] - (jf * (jf + nu)).sqrt() * out[j - 1])
                / ((jf + 1.0) * (jf + 1.0 + nu)).sqrt();
        }
    }

    /// First row of `exp(M)` with `M = x(θ_max 𝟙 - diag θ) + x N`, `N` the
    /// unit superdiagonal. `M` is entrywise nonnegative, so Taylor
    /// scaling and squaring has no cancellation. Up to the factor
    /// `e^{-xθ_max}` and alternating signs this row holds the divided
    /// differences of `e^{-xθ}`.
    fn divided_differences(&self, x: f64) -> Vec<f64> {
        let p = self.p;
        let mut m = DMatrix::zeros(p, p);
        for k in 0..p {
            m[(k, k)] = x * (self.theta_max - self.thetas[k]);
            if k + 1 < p {
                m[(k, k + 1)] = x;
            }
        }
        let norm = x * (1.0 + self.theta_max - self.thetas[p - 1]);
        let mut squarings = 0;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        m *= scale;
        let mut result = DMatrix::identity(p, p);
        let mut term = DMatrix::identity(p, p);
        for i in 1..=24 {
            term = &term * &m / i as f64;
            result += &term;
        }
        for _ in 0..squarings {
            result = &result * &result;
        }
        result.row(0).iter().copied().collect()
    }
}

/// Exact gap probability for a β = 2 query, choosing the route
/// automatically.
pub fn gap_exact_beta2(q: &GapQuery) -> Result<f64> {
    q.validate()?;
    q.require_beta2()?;
    Beta2Oracle::new(&q.spectrum.lambdas, q.n)?.gap(q.kind, q.threshold)
}

pub fn gap_exact_beta2_with(q: &GapQuery, route: OracleRoute) -> Result<f64> {
    q.validate()?;
    q.require_beta2()?;
    Beta2Oracle::with_route(&q.spectrum.lambdas, q.n, route)?.gap(q.kind, q.threshold)
}

/// Exact gap probabilities on a grid of thresholds, each with an error
/// estimate: the disagreement between the two routes where both apply,
/// `None` where only one does.
pub fn gap_grid_beta2(kind: GapKind, lambdas: &[f64], n: usize, thresholds: &[f64]) -> Result<Vec<(f64, Option<f64>)>> {
    let main = Beta2Oracle::new(lambdas, n)?;
    let other = match main.route() {
        OracleRoute::Direct => OracleRoute::Confluent,
        OracleRoute::Confluent => OracleRoute::Direct,
    };
    let other = Beta2Oracle::with_route(lambdas, n, other).ok();
    thresholds
        .iter()
        .map(|&t| {
            let v = main.gap(kind, t)?;
            let err = other.as_ref().and_then(|o| o.gap(kind, t).ok()).map(|w| (v - w).abs());
            Ok((v, err))
        })
        .collect()
}
