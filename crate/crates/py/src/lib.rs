//! Python bindings: Tracy-Widom laws, edge scaling, exact β = 2 gap
//! probabilities, the variance condition and full experiments.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::de::DeserializeOwned;

use corrwish::ensemble::{Beta, EmpiricalSpectrum};
use corrwish::harness::{run_experiment_with_threads, write_outputs, ExperimentConfig, ExperimentSummary};
use corrwish::oracle::{gap_max_matrix_model_beta2, Beta2Oracle, GapKind, GapQuery, QuadratureSpec};
use corrwish::scaling::{Edge, ScalingMode};
use corrwish::tracywidom::{GseConvention, TWDistribution};

create_exception!(pycorrwish, CorrwishError, PyException);

fn err(e: impl std::fmt::Display) -> PyErr {
    CorrwishError::new_err(e.to_string())
}

/// Parses a snake_case enum name such as `"max"` or `"max_below_t"`.
fn name<T: DeserializeOwned>(s: &str) -> PyResult<T> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| err(format!("unknown option {s:?}")))
}

fn distribution(beta: u8, convention: Option<&str>) -> PyResult<TWDistribution> {
    let beta = Beta::try_from(beta).map_err(err)?;
    let convention = convention.map(name::<GseConvention>).transpose()?.unwrap_or(GseConvention::DEFAULT);
    Ok(TWDistribution::with_convention(beta, convention))
}

/// Tracy-Widom CDF `F_β(χ)`.
#[pyfunction]
#[pyo3(signature = (beta, chi, convention=None))]
fn tw_cdf(beta: u8, chi: Vec<f64>, convention: Option<&str>) -> PyResult<Vec<f64>> {
    let d = distribution(beta, convention)?;
    Ok(chi.iter().map(|&x| d.cdf(x)).collect())
}

/// Tracy-Widom density `f_β(χ)`.
#[pyfunction]
#[pyo3(signature = (beta, chi, convention=None))]
fn tw_pdf(beta: u8, chi: Vec<f64>, convention: Option<&str>) -> PyResult<Vec<f64>> {
    let d = distribution(beta, convention)?;
    Ok(chi.iter().map(|&x| d.pdf(x)).collect())
}

/// `(mean, variance)` of the Tracy-Widom law.
#[pyfunction]
#[pyo3(signature = (beta, convention=None))]
fn tw_moments(beta: u8, convention: Option<&str>) -> PyResult<(f64, f64)> {
    let d = distribution(beta, convention)?;
    Ok((d.mean(), d.variance()))
}

/// Centering and scaling of an edge: dict with gamma, mu, sigma, nu.
#[pyfunction]
#[pyo3(signature = (n, p, edge="max", mode="paper"))]
fn johnstone_params<'py>(py: Python<'py>, n: usize, p: usize, edge: &str, mode: &str) -> PyResult<Bound<'py, PyDict>> {
    let s = corrwish::scaling::johnstone_params(n, p, name::<Edge>(edge)?, name::<ScalingMode>(mode)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("gamma", s.gamma)?;
    d.set_item("mu", s.mu)?;
    d.set_item("sigma", s.sigma)?;
    d.set_item("nu", s.nu)?;
    Ok(d)
}

/// Exact β = 2 gap probabilities: `P(λ_max ≤ t)` for kind `"max_below_t"`,
/// `P(λ_min ≥ s)` for `"min_above_s"`.
#[pyfunction]
fn gap_exact_beta2(kind: &str, lambdas: Vec<f64>, n: usize, thresholds: Vec<f64>) -> PyResult<Vec<f64>> {
    let kind = name::<GapKind>(kind)?;
    let oracle = Beta2Oracle::new(&lambdas, n).map_err(err)?;
    thresholds.iter().map(|&t| oracle.gap(kind, t).map_err(err)).collect()
}

/// `P(λ_max ≤ t)` from the n×n matrix-model integral; returns
/// `(value, imag_residual)`.
#[pyfunction]
fn gap_max_matrix_model(lambdas: Vec<f64>, n: usize, threshold: f64) -> PyResult<(f64, f64)> {
    let spectrum = EmpiricalSpectrum::from_values(lambdas).map_err(err)?;
    let q = GapQuery::new(GapKind::MaxBelowT, threshold, spectrum, n);
    let e = gap_max_matrix_model_beta2(&q, &QuadratureSpec::default()).map_err(err)?;
    Ok((e.value, e.imag_residual))
}

/// Variance-decay diagnostics of a spectrum, as a JSON string.
#[pyfunction]
fn variance_condition(lambdas: Vec<f64>, n: usize) -> PyResult<String> {
    let spectrum = EmpiricalSpectrum::from_values(lambdas).map_err(err)?;
    serde_json::to_string(&corrwish::scaling::variance_condition(&spectrum, n)).map_err(err)
}

/// Runs an experiment from a JSON config and returns the summary as JSON.
/// Writes the usual artifacts when `out_dir` is given.
#[pyfunction]
#[pyo3(signature = (config_json, out_dir=None, threads=None))]
fn simulate(py: Python<'_>, config_json: &str, out_dir: Option<PathBuf>, threads: Option<usize>) -> PyResult<String> {
    let cfg: ExperimentConfig = serde_json::from_str(config_json).map_err(err)?;
    let result = py.detach(|| run_experiment_with_threads(&cfg, threads)).map_err(err)?;
    if let Some(dir) = out_dir {
        write_outputs(&result, &dir).map_err(err)?;
    }
    serde_json::to_string(&ExperimentSummary::from_result(&result)).map_err(err)
}

#[pymodule]
pub fn pycorrwish(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CorrwishError", m.py().get_type::<CorrwishError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(tw_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(tw_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(tw_moments, m)?)?;
    m.add_function(wrap_pyfunction!(johnstone_params, m)?)?;
    m.add_function(wrap_pyfunction!(gap_exact_beta2, m)?)?;
    m.add_function(wrap_pyfunction!(gap_max_matrix_model, m)?)?;
    m.add_function(wrap_pyfunction!(variance_condition, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
