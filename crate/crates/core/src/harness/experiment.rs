use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_location_scale, FitBounds, LocationScaleFit};
use super::stats::{ecdf, ks_distance, pdf_histogram, Ecdf, Histogram, TabulatedCdf};
use crate::ensemble::{build_spectrum, extreme_eigenvalues, sample_data_matrix, Beta, EmpiricalSpectrum, EnsembleConfig};
use crate::error::{Error, Result};
use crate::oracle::GapKind;
use crate::rng::RandomStream;
use crate::scaling::{center_rescale, johnstone_params, refined_params, variance_condition, ConditionReport, Edge, ScalingMode, ScalingParams};
use crate::tracywidom::{GseConvention, TWDistribution};

/// Redraws allowed for one trial before it counts as failed.
const MAX_ATTEMPTS: u32 = 8;
/// Fitted shifts may reach `FIT_C · μ/n` and `|κ - 1| <= FIT_C / n^(1/3)`.
pub const FIT_C: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Adjustment {
    Paper,
    Adjusted,
    /// Paper scaling followed by a bounded location/scale fit.
    Fitted,
}

impl Adjustment {
    /// Scaling that the adjustment starts from.
    pub fn base(self) -> ScalingMode {
        match self {
            Adjustment::Adjusted => ScalingMode::Refined,
            Adjustment::Paper | Adjustment::Fitted => ScalingMode::Paper,
        }
    }

    /// Largest eigenvalue: refined a-priori scaling. Smallest: fitted, since
    /// the hard wall at zero needs a stronger 1/n correction.
    pub fn default_for(_beta: Beta, edge: Edge) -> Self {
        match edge {
            Edge::Max => Adjustment::Adjusted,
            Edge::Min => Adjustment::Fitted,
        }
    }
}

fn default_edges() -> Vec<Edge> {
    vec![Edge::Max, Edge::Min]
}

fn default_bins() -> usize {
    60
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub ensemble: EnsembleConfig,
    pub trials: usize,
    #[serde(default = "default_edges")]
    pub edges: Vec<Edge>,
    /// `None` picks [`Adjustment::default_for`] per edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling_mode: Option<Adjustment>,
    #[serde(default = "default_bins")]
    pub histogram_bins: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gse_convention: Option<GseConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(ensemble: EnsembleConfig, trials: usize) -> Self {
        Self {
            ensemble,
            trials,
            edges: default_edges(),
            scaling_mode: None,
            histogram_bins: default_bins(),
            gse_convention: None,
            out_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ensemble.validate()?;
        if self.trials < 100 {
            return Err(Error::InvalidConfig(format!("trials = {} but at least 100 are required", self.trials)));
        }
        if self.histogram_bins < 10 {
            return Err(Error::InvalidConfig(format!("histogram_bins = {} but at least 10 are required", self.histogram_bins)));
        }
        if self.edges.is_empty() {
            return Err(Error::InvalidConfig("no edges requested".into()));
        }
        Ok(())
    }

    pub fn adjustment(&self, edge: Edge) -> Adjustment {
        self.scaling_mode.unwrap_or_else(|| Adjustment::default_for(self.ensemble.beta, edge))
    }

    pub fn convention(&self) -> GseConvention {
        self.gse_convention.unwrap_or(GseConvention::DEFAULT)
    }
}

/// Fitted adjustment expressed both in χ units and in eigenvalue units
/// (`delta = shift · σ`, per unit Λ̄).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub delta: f64,
    pub kappa: f64,
    pub shift_chi: f64,
    pub ks: f64,
    pub at_boundary: bool,
    pub delta_bound: f64,
    pub kappa_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeResult {
    pub edge: Edge,
    pub adjustment: Adjustment,
    pub params: ScalingParams,
    /// Rescaled samples in trial order, after the fit when there is one.
    pub chi: Vec<f64>,
    pub ecdf: Ecdf,
    pub ks: f64,
    /// KS of the unfitted samples under paper and adjusted scaling.
    pub ks_paper: f64,
    pub ks_adjusted: f64,
    pub fit: Option<FitReport>,
    pub histogram: Histogram,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub spectrum: EmpiricalSpectrum,
    pub x_max: Vec<f64>,
    pub x_min: Vec<f64>,
    pub edges: Vec<EdgeResult>,
    pub condition: ConditionReport,
    pub gse_convention: GseConvention,
    /// Trials whose first draw failed and was redrawn from a fresh substream.
    pub resampled: Vec<usize>,
}

impl ExperimentResult {
    pub fn edge(&self, edge: Edge) -> Option<&EdgeResult> {
        self.edges.iter().find(|e| e.edge == edge)
    }
}

/// Per-trial extremes of `W W†` (distinct eigenvalues).
#[derive(Clone, Debug, PartialEq)]
pub struct Extremes {
    pub x_max: Vec<f64>,
    pub x_min: Vec<f64>,
    pub resampled: Vec<usize>,
}

fn with_threads<T: Send, F: FnOnce() -> T + Send>(threads: Option<usize>, f: F) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Draw `trials` independent matrices and record their extreme eigenvalues.
/// The result is independent of `threads`.
pub fn sample_extremes(
    ensemble: &EnsembleConfig,
    spectrum: &EmpiricalSpectrum,
    trials: usize,
    threads: Option<usize>,
) -> Result<Extremes> {
    let seed = ensemble.seed;
    let draws: Vec<(Option<(f64, f64)>, u32)> = with_threads(threads, || {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                for attempt in 0..MAX_ATTEMPTS {
                    let mut rng = RandomStream::for_trial(seed, trial, attempt);
                    let ok = sample_data_matrix(ensemble, spectrum, &mut rng).and_then(|w| extreme_eigenvalues(&w));
                    if let Ok(v) = ok {
                        return (Some(v), attempt);
                    }
                }
                (None, MAX_ATTEMPTS)
            })
            .collect()
    })?;
    let failed: Vec<usize> = draws.iter().enumerate().filter(|(_, d)| d.0.is_none()).map(|(i, _)| i).collect();
    if failed.len() * 1000 > trials {
        return Err(Error::TooManyFailures { failed: failed.len(), trials });
    }
    if let Some(&trial) = failed.first() {
        return Err(Error::EigenFailure { trial });
    }
    let resampled = draws.iter().enumerate().filter(|(_, d)| d.1 > 0).map(|(i, _)| i).collect();
    let (x_max, x_min) = draws.into_iter().map(|(v, _)| v.expect("failures handled above")).unzip();
    Ok(Extremes { x_max, x_min, resampled })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with_threads(cfg, None)
}

pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentResult> {
    cfg.validate()?;
    let ens = &cfg.ensemble;
    // scaling errors (degenerate edge) are reported before any sampling
    let spectrum = build_spectrum(&ens.spectrum, ens.p, &mut RandomStream::for_spectrum(ens.seed))?;
    let mut plans = Vec::new();
    for &edge in &cfg.edges {
        let adjustment = cfg.adjustment(edge);
        let paper = johnstone_params(ens.n, ens.p, edge, ScalingMode::Paper)?;
        let refined = refined_params(ens.n, ens.p, ens.beta, &spectrum, edge)?;
        plans.push((edge, adjustment, paper, refined));
    }
    let condition = variance_condition(&spectrum, ens.n);
    let extremes = sample_extremes(ens, &spectrum, cfg.trials, threads)?;
    let convention = cfg.convention();
    let dist = TWDistribution::with_convention(ens.beta, convention);
    let cdf = TabulatedCdf::new(&dist);
    let lambda_bar = spectrum.lambda_bar;

    let mut edges = Vec::new();
    for (edge, adjustment, paper, adjusted) in plans {
        let xs = match edge {
            Edge::Max => &extremes.x_max,
            Edge::Min => &extremes.x_min,
        };
        let rescale = |p: &ScalingParams| -> Result<Vec<f64>> {
            xs.iter().map(|&x| center_rescale(x, p, lambda_bar)).collect()
        };
        let params = if adjustment == Adjustment::Adjusted { adjusted } else { paper };
        let chi_paper = rescale(&paper)?;
        let chi_adjusted = rescale(&adjusted)?;
        let ks_paper = ks_distance(&ecdf(&chi_paper), |x| cdf.eval(x));
        let ks_adjusted = ks_distance(&ecdf(&chi_adjusted), |x| cdf.eval(x));
        let (chi, fit) = match adjustment {
            Adjustment::Paper => (chi_paper, None),
            Adjustment::Adjusted => (chi_adjusted, None),
            Adjustment::Fitted => {
                let n = ens.n as f64;
                let delta_bound = FIT_C * params.mu / n;
                let kappa_bound = FIT_C / n.cbrt();
                let bounds = FitBounds { shift_max: delta_bound / params.sigma.abs(), kappa_dev: kappa_bound };
                let LocationScaleFit { shift, kappa, ks, at_boundary } =
                    fit_location_scale(&chi_paper, |x| cdf.eval(x), bounds);
                let chi = chi_paper.iter().map(|c| (c - shift) / kappa).collect();
                let report = FitReport {
                    delta: shift * params.sigma,
                    kappa,
                    shift_chi: shift,
                    ks,
                    at_boundary,
                    delta_bound,
                    kappa_bound,
                };
                (chi, Some(report))
            }
        };
        let e = ecdf(&chi);
        let ks = ks_distance(&e, |x| cdf.eval(x));
        let histogram = pdf_histogram(&chi, cfg.histogram_bins);
        edges.push(EdgeResult { edge, adjustment, params, chi, ecdf: e, ks, ks_paper, ks_adjusted, fit, histogram });
    }
    Ok(ExperimentResult {
        config: cfg.clone(),
        spectrum,
        x_max: extremes.x_max,
        x_min: extremes.x_min,
        edges,
        condition,
        gse_convention: convention,
        resampled: extremes.resampled,
    })
}

/// Monte Carlo gap probability with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub threshold: f64,
    pub probability: f64,
    pub std_error: f64,
}

/// `P(λ_max ≤ t)` or `P(λ_min ≥ s)` estimated from `trials` draws of the
/// ensemble with the given population spectrum.
pub fn gap_monte_carlo(
    ensemble: &EnsembleConfig,
    spectrum: &EmpiricalSpectrum,
    kind: GapKind,
    thresholds: &[f64],
    trials: usize,
    threads: Option<usize>,
) -> Result<Vec<GapEstimate>> {
    let ex = sample_extremes(ensemble, spectrum, trials, threads)?;
    let n = trials as f64;
    Ok(thresholds
        .iter()
        .map(|&t| {
            let hits = match kind {
                GapKind::MaxBelowT => ex.x_max.iter().filter(|&&x| x <= t).count(),
                GapKind::MinAboveS => ex.x_min.iter().filter(|&&x| x >= t).count(),
            };
            let probability = hits as f64 / n;
            let std_error = (probability * (1.0 - probability) / n).sqrt();
            GapEstimate { threshold: t, probability, std_error }
        })
        .collect())
}
