//! JSON inputs for the subcommands, with line-anchored parse errors.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use corrwish::ensemble::{build_spectrum, Beta, EmpiricalSpectrum, SpectrumSpec};
use corrwish::oracle::GapKind;
use corrwish::rng::RandomStream;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },

    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] corrwish::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn invalid(path: &Path, message: impl std::fmt::Display) -> CliError {
    CliError::Invalid { path: path.to_path_buf(), message: message.to_string() }
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| {
        // serde_json appends " at line L column C"; the prefix carries it instead
        let full = e.to_string();
        let message = full.split(" at line ").next().unwrap_or(&full).to_string();
        CliError::Parse { path: path.to_path_buf(), line: e.line(), column: e.column(), message }
    })
}

/// Population spectrum given either as explicit values or as a spec with `p`.
#[derive(Debug, Deserialize)]
pub struct SpectrumInput {
    #[serde(default)]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default)]
    pub spectrum: Option<SpectrumSpec>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl SpectrumInput {
    pub fn resolve(&self, path: &Path, seed: Option<u64>) -> Result<EmpiricalSpectrum> {
        let seed = seed.unwrap_or(self.seed);
        match (&self.lambdas, &self.spectrum) {
            (Some(values), None) => {
                if let Some(p) = self.p.filter(|&p| p != values.len()) {
                    return Err(invalid(path, format!("p = {p} but {} lambdas given", values.len())));
                }
                Ok(EmpiricalSpectrum::from_values(values.clone())?)
            }
            (None, Some(spec)) => {
                let p = self.p.ok_or_else(|| invalid(path, "a spectrum spec needs `p`"))?;
                spec.validate(p)?;
                Ok(build_spectrum(spec, p, &mut RandomStream::for_spectrum(seed))?)
            }
            _ => Err(invalid(path, "give exactly one of `lambdas` and `spectrum`")),
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct OracleQuery {
    pub kind: GapKind,
    #[serde(default = "complex")]
    pub beta: Beta,
    pub n: usize,
    #[serde(flatten)]
    pub spectrum: SpectrumInput,
    pub thresholds: Vec<f64>,
}

fn complex() -> Beta {
    Beta::Complex
}

#[derive(Debug, Deserialize)]
pub struct ConditionQuery {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(flatten)]
    pub spectrum: SpectrumInput,
}
