//! Experiment artifacts: `samples.csv`, `summary.json`, `hist_<edge>.csv`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::experiment::{Adjustment, ExperimentConfig, ExperimentResult, FitReport};
use crate::error::Result;
use crate::scaling::{ConditionReport, Edge};
use crate::tracywidom::{GseConvention, TWDistribution};

/// `x` with 10 significant digits, plain notation for moderate magnitudes.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..10).contains(&mag) {
        let decimals = (9 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(s)
    } else {
        format!("{x:.9e}")
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.to_string()
        }
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSummary {
    pub edge: Edge,
    pub scaling_mode: Adjustment,
    pub gamma: f64,
    pub mu: f64,
    pub sigma: f64,
    pub nu: usize,
    pub ks: f64,
    pub ks_paper: f64,
    pub ks_adjusted: f64,
    pub fit: Option<FitReport>,
    pub chi_mean: f64,
    pub chi_var: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub lambda_bar: f64,
    pub mean: f64,
    pub var_s: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub version: String,
    pub config: ExperimentConfig,
    pub seed: u64,
    /// √(p/n) and p/n with the dimensions as given.
    pub gamma: f64,
    pub gamma_squared: f64,
    pub edges: Vec<EdgeSummary>,
    pub condition: ConditionReport,
    pub spectrum: SpectrumSummary,
    pub gse_convention: GseConvention,
    pub tw_reference_mean: f64,
    pub tw_reference_var: f64,
    pub resampled_trials: Vec<usize>,
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (m, xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n)
}

impl ExperimentSummary {
    pub fn from_result(r: &ExperimentResult) -> Self {
        let ens = &r.config.ensemble;
        let ratio = ens.p as f64 / ens.n as f64;
        let dist = TWDistribution::with_convention(ens.beta, r.gse_convention);
        let lambdas = &r.spectrum.lambdas;
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: r.config.clone(),
            seed: ens.seed,
            gamma: ratio.sqrt(),
            gamma_squared: ratio,
            edges: r
                .edges
                .iter()
                .map(|e| {
                    let (chi_mean, chi_var) = mean_var(&e.chi);
                    EdgeSummary {
                        edge: e.edge,
                        scaling_mode: e.adjustment,
                        gamma: e.params.gamma,
                        mu: e.params.mu,
                        sigma: e.params.sigma,
                        nu: e.params.nu,
                        ks: e.ks,
                        ks_paper: e.ks_paper,
                        ks_adjusted: e.ks_adjusted,
                        fit: e.fit,
                        chi_mean,
                        chi_var,
                    }
                })
                .collect(),
            condition: r.condition.clone(),
            spectrum: SpectrumSummary {
                lambda_bar: r.spectrum.lambda_bar,
                mean: r.spectrum.mean(),
                var_s: r.spectrum.variance(),
                min: lambdas.iter().copied().fold(f64::INFINITY, f64::min),
                max: lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            },
            gse_convention: r.gse_convention,
            tw_reference_mean: dist.mean(),
            tw_reference_var: dist.variance(),
            resampled_trials: r.resampled.clone(),
        }
    }
}

/// `trial,x_max,x_min,chi_max,chi_min`; χ columns are empty for edges that
/// were not requested.
pub fn samples_csv(r: &ExperimentResult) -> String {
    let chi_max = r.edge(Edge::Max).map(|e| &e.chi);
    let chi_min = r.edge(Edge::Min).map(|e| &e.chi);
    let mut out = String::from("trial,x_max,x_min,chi_max,chi_min\n");
    for i in 0..r.x_max.len() {
        let cm = chi_max.map(|c| fmt_sig(c[i])).unwrap_or_default();
        let cn = chi_min.map(|c| fmt_sig(c[i])).unwrap_or_default();
        let _ = writeln!(out, "{i},{},{},{cm},{cn}", fmt_sig(r.x_max[i]), fmt_sig(r.x_min[i]));
    }
    out
}

/// `bin_center,density,tw_pdf` for one edge.
pub fn histogram_csv(r: &ExperimentResult, edge: Edge) -> Option<String> {
    let e = r.edge(edge)?;
    let dist = TWDistribution::with_convention(r.config.ensemble.beta, r.gse_convention);
    let mut out = String::from("bin_center,density,tw_pdf\n");
    for (c, d) in e.histogram.centers().iter().zip(&e.histogram.density) {
        let _ = writeln!(out, "{},{},{}", fmt_sig(*c), fmt_sig(*d), fmt_sig(dist.pdf(*c)));
    }
    Some(out)
}

/// Write all artifacts into `dir` and return the paths written.
pub fn write_outputs(r: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let path = dir.join("samples.csv");
    fs::write(&path, samples_csv(r))?;
    written.push(path);
    let path = dir.join("summary.json");
    fs::write(&path, serde_json::to_string_pretty(&ExperimentSummary::from_result(r))?)?;
    written.push(path);
    for e in &r.edges {
        if let Some(csv) = histogram_csv(r, e.edge) {
            let path = dir.join(format!("hist_{}.csv", e.edge));
            fs::write(&path, csv)?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(746.4101615137754), "746.4101615");
        assert_eq!(fmt_sig(-0.0123456789012), "-0.0123456789");
        assert_eq!(fmt_sig(1.5e-9), "1.500000000e-9");
        assert_eq!(fmt_sig(f64::NAN), "nan");
    }
}
