//! Correlated Wishart ensembles for the three Dyson indices.
//!
//! Data matrices are drawn as `W = Λ^{1/2} G` with a diagonal population
//! matrix `Λ`; spectral observables are basis invariant, so this is no loss
//! of generality. Each entry satisfies `E|W_ij|^2 = Λ_i`, where `|.|^2` sums
//! the squares of all real components.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::RandomStream;

/// Relative gap below which two eigenvalues of a self-dual matrix are
/// treated as one Kramers pair.
pub const KRAMERS_TOL: f64 = 1e-9;

/// Dyson index: real (1), complex (2) or quaternion (4) entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Beta {
    Real,
    Complex,
    Quaternion,
}

impl Beta {
    pub fn value(self) -> u8 {
        match self {
            Beta::Real => 1,
            Beta::Complex => 2,
            Beta::Quaternion => 4,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    /// Multiplicity of each distinct eigenvalue (γ₂).
    pub fn gamma2(self) -> usize {
        match self {
            Beta::Quaternion => 2,
            _ => 1,
        }
    }

    /// γ₁ = 2γ₂/β.
    pub fn gamma1(self) -> f64 {
        2.0 * self.gamma2() as f64 / self.as_f64()
    }

    pub const ALL: [Beta; 3] = [Beta::Real, Beta::Complex, Beta::Quaternion];
}

impl TryFrom<u8> for Beta {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Beta::Real),
            2 => Ok(Beta::Complex),
            4 => Ok(Beta::Quaternion),
            other => Err(Error::InvalidConfig(format!("beta must be 1, 2 or 4, got {other}"))),
        }
    }
}

impl From<Beta> for u8 {
    fn from(b: Beta) -> u8 {
        b.value()
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// How the population eigenvalues are produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumSpec {
    Identity,
    Explicit { values: Vec<f64> },
    /// Uniform around `mean` with target sample variance `p^(-var_exponent)`.
    Uniform { mean: f64, var_exponent: f64 },
}

impl SpectrumSpec {
    pub fn validate(&self, p: usize) -> Result<()> {
        match self {
            SpectrumSpec::Identity => Ok(()),
            SpectrumSpec::Explicit { values } => {
                if values.len() != p {
                    return Err(Error::DimensionMismatch(format!(
                        "explicit spectrum has {} values but p = {p}",
                        values.len()
                    )));
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(Error::InvalidSpectrum(format!("eigenvalue {v} is not positive")));
                }
                Ok(())
            }
            SpectrumSpec::Uniform { mean, var_exponent } => {
                if !(mean.is_finite() && *mean > 0.0) {
                    return Err(Error::InvalidSpectrum(format!("mean {mean} must be positive")));
                }
                if !(var_exponent.is_finite() && *var_exponent > 0.0) {
                    return Err(Error::InvalidSpectrum(format!(
                        "variance exponent {var_exponent} must be positive"
                    )));
                }
                let a = uniform_half_width(*var_exponent, p);
                if a >= *mean {
                    return Err(Error::InvalidSpectrum(format!(
                        "half-width {a} >= mean {mean}: eigenvalues would not stay positive"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Half-width `a = sqrt(3 p^(-alpha))` of the uniform law with variance `p^(-alpha)`.
pub fn uniform_half_width(var_exponent: f64, p: usize) -> f64 {
    (3.0 * (p as f64).powf(-var_exponent)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub beta: Beta,
    pub p: usize,
    pub n: usize,
    pub spectrum: SpectrumSpec,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidConfig("p must be at least 1".into()));
        }
        if self.n < self.p {
            return Err(Error::InvalidConfig(format!("need p <= n, got p = {}, n = {}", self.p, self.n)));
        }
        self.spectrum.validate(self.p)
    }
}

/// Population eigenvalues with the decomposition `Λ_k = Λ̄ + p^(-α) Λ⁽¹⁾_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSpectrum {
    pub lambdas: Vec<f64>,
    pub lambda_bar: f64,
    pub lambda1: Vec<f64>,
    /// Decay exponent; `None` for a spectrum with zero variance.
    pub alpha: Option<f64>,
}

impl EmpiricalSpectrum {
    pub fn identity(p: usize) -> Self {
        Self::constant(p, 1.0)
    }

    pub fn constant(p: usize, value: f64) -> Self {
        Self { lambdas: vec![value; p], lambda_bar: value, lambda1: vec![0.0; p], alpha: None }
    }

    /// Mean-centred decomposition with the effective exponent
    /// `α_eff = -ln Var_s / ln p`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        check_positive(&values)?;
        let p = values.len();
        let mean = values.iter().sum::<f64>() / p as f64;
        let var = sample_variance(&values);
        let alpha = if var > 0.0 && p > 1 { Some(-var.ln() / (p as f64).ln()) } else { None };
        Ok(Self::decompose(values, mean, alpha))
    }

    /// Decomposition around an arbitrary reference level `lambda_bar` with a
    /// given exponent. Unlike [`from_values`](Self::from_values), `tr Λ⁽¹⁾`
    /// need not vanish.
    pub fn with_reference(values: Vec<f64>, lambda_bar: f64, alpha: f64) -> Result<Self> {
        check_positive(&values)?;
        if !(lambda_bar > 0.0) {
            return Err(Error::InvalidSpectrum(format!("reference level {lambda_bar} must be positive")));
        }
        Ok(Self::decompose(values, lambda_bar, Some(alpha)))
    }

    fn decompose(lambdas: Vec<f64>, lambda_bar: f64, alpha: Option<f64>) -> Self {
        let p = lambdas.len() as f64;
        let lambda1 = match alpha {
            Some(a) => lambdas.iter().map(|l| (l - lambda_bar) * p.powf(a)).collect(),
            None => vec![0.0; lambdas.len()],
        };
        Self { lambdas, lambda_bar, lambda1, alpha }
    }

    pub fn p(&self) -> usize {
        self.lambdas.len()
    }

    /// ⟨Λ⟩_s.
    pub fn mean(&self) -> f64 {
        self.lambdas.iter().sum::<f64>() / self.p() as f64
    }

    /// Var_s(Λ) = ⟨Λ²⟩_s - ⟨Λ⟩_s².
    pub fn variance(&self) -> f64 {
        sample_variance(&self.lambdas)
    }

    pub fn trace_lambda1(&self) -> f64 {
        self.lambda1.iter().sum()
    }

    /// Largest elementwise relative error of `Λ̄ + p^(-α) Λ⁽¹⁾_k` against `Λ_k`.
    pub fn reconstruction_error(&self) -> f64 {
        let p = self.p() as f64;
        let scale = self.alpha.map_or(0.0, |a| p.powf(-a));
        self.lambdas
            .iter()
            .zip(&self.lambda1)
            .map(|(l, l1)| ((self.lambda_bar + scale * l1) - l).abs() / l.abs())
            .fold(0.0, f64::max)
    }

    /// Scale every eigenvalue by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            lambdas: self.lambdas.iter().map(|l| l * c).collect(),
            lambda_bar: self.lambda_bar * c,
            lambda1: self.lambda1.iter().map(|l| l * c).collect(),
            alpha: self.alpha,
        }
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSpectrum("empty spectrum".into()));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidSpectrum(format!("eigenvalue {v} is not positive")));
    }
    Ok(())
}

pub(crate) fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}

/// Draw the population spectrum.
///
/// The uniform kind is sampled stratified on `[Λ̄ - a, Λ̄ + a]`, recentred to
/// mean exactly `Λ̄` and rescaled so that `Var_s` equals `p^(-α)` exactly.
pub fn build_spectrum(spec: &SpectrumSpec, p: usize, rng: &mut RandomStream) -> Result<EmpiricalSpectrum> {
    if p == 0 {
        return Err(Error::InvalidConfig("p must be at least 1".into()));
    }
    spec.validate(p)?;
    match spec {
        SpectrumSpec::Identity => Ok(EmpiricalSpectrum::identity(p)),
        SpectrumSpec::Explicit { values } => EmpiricalSpectrum::from_values(values.clone()),
        SpectrumSpec::Uniform { mean, var_exponent } => {
            if p == 1 {
                return Ok(EmpiricalSpectrum::constant(1, *mean));
            }
            let a = uniform_half_width(*var_exponent, p);
            let target_var = (p as f64).powf(-var_exponent);
            let mut dev: Vec<f64> = (0..p)
                .map(|k| {
                    let u: f64 = rng.random();
                    -a + 2.0 * a * (k as f64 + u) / p as f64
                })
                .collect();
            let shift = dev.iter().sum::<f64>() / p as f64;
            dev.iter_mut().for_each(|d| *d -= shift);
            let var = dev.iter().map(|d| d * d).sum::<f64>() / p as f64;
            let stretch = (target_var / var).sqrt();
            let lambdas: Vec<f64> = dev.iter().map(|d| mean + d * stretch).collect();
            if lambdas.iter().any(|l| *l <= 0.0) {
                return Err(Error::InvalidSpectrum("drawn eigenvalue is not positive".into()));
            }
            let mut s = EmpiricalSpectrum::decompose(lambdas, *mean, Some(*var_exponent));
            s.lambda_bar = *mean;
            Ok(s)
        }
    }
}

/// A `p x n` data matrix. Quaternion entries are stored as `2 x 2` complex
/// blocks `[[a, b], [-conj(b), conj(a)]]`, giving a `2p x 2n` array.
#[derive(Clone, Debug, PartialEq)]
pub struct DataMatrix {
    pub beta: Beta,
    pub p: usize,
    pub n: usize,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl DataMatrix {
    pub fn real(m: DMatrix<f64>) -> Self {
        Self { beta: Beta::Real, p: m.nrows(), n: m.ncols(), entries: Entries::Real(m) }
    }

    pub fn complex(m: DMatrix<Complex64>) -> Self {
        Self { beta: Beta::Complex, p: m.nrows(), n: m.ncols(), entries: Entries::Complex(m) }
    }

    /// Largest deviation from the quaternion block pattern. Zero for β = 1, 2.
    pub fn self_duality_residual(&self) -> f64 {
        let Entries::Complex(m) = &self.entries else { return 0.0 };
        if self.beta != Beta::Quaternion {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..self.p {
            for j in 0..self.n {
                let (r, c) = (2 * i, 2 * j);
                let a = m[(r, c)];
                let b = m[(r, c + 1)];
                worst = worst.max((m[(r + 1, c)] + b.conj()).norm());
                worst = worst.max((m[(r + 1, c + 1)] - a.conj()).norm());
            }
        }
        worst
    }
}

/// Draw `W` with rows scaled by `sqrt(Λ_i)`.
pub fn sample_data_matrix(
    config: &EnsembleConfig,
    spectrum: &EmpiricalSpectrum,
    rng: &mut RandomStream,
) -> Result<DataMatrix> {
    let (p, n) = (config.p, config.n);
    if spectrum.p() != p {
        return Err(Error::DimensionMismatch(format!(
            "spectrum has {} eigenvalues but p = {p}",
            spectrum.p()
        )));
    }
    let mut gauss = || -> f64 { rng.sample(StandardNormal) };
    let entries = match config.beta {
        Beta::Real => {
            let mut m = DMatrix::<f64>::zeros(p, n);
            for i in 0..p {
                let s = spectrum.lambdas[i].sqrt();
                for j in 0..n {
                    m[(i, j)] = s * gauss();
                }
            }
            Entries::Real(m)
        }
        Beta::Complex => {
            let mut m = DMatrix::<Complex64>::zeros(p, n);
            for i in 0..p {
                let s = (spectrum.lambdas[i] / 2.0).sqrt();
                for j in 0..n {
                    let re = gauss();
                    let im = gauss();
                    m[(i, j)] = Complex64::new(s * re, s * im);
                }
            }
            Entries::Complex(m)
        }
        Beta::Quaternion => {
            let mut m = DMatrix::<Complex64>::zeros(2 * p, 2 * n);
            for i in 0..p {
                let s = (spectrum.lambdas[i] / 4.0).sqrt();
                for j in 0..n {
                    let q: [f64; 4] = [gauss(), gauss(), gauss(), gauss()];
                    let a = Complex64::new(s * q[0], s * q[1]);
                    let b = Complex64::new(s * q[2], s * q[3]);
                    let (r, c) = (2 * i, 2 * j);
                    m[(r, c)] = a;
                    m[(r, c + 1)] = b;
                    m[(r + 1, c)] = -b.conj();
                    m[(r + 1, c + 1)] = a.conj();
                }
            }
            Entries::Complex(m)
        }
    };
    Ok(DataMatrix { beta: config.beta, p, n, entries })
}

/// The unnormalized Wishart matrix `W W†` (size `2p` for β = 4).
#[derive(Clone, Debug, PartialEq)]
pub enum CovMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl CovMatrix {
    pub fn dim(&self) -> usize {
        match self {
            CovMatrix::Real(m) => m.nrows(),
            CovMatrix::Complex(m) => m.nrows(),
        }
    }

    /// `max |A - A†| / max |A|`.
    pub fn hermiticity_residual(&self) -> f64 {
        match self {
            CovMatrix::Real(m) => {
                let scale = m.amax();
                (m - m.transpose()).amax() / scale.max(f64::MIN_POSITIVE)
            }
            CovMatrix::Complex(m) => {
                let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let diff = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                diff / scale.max(f64::MIN_POSITIVE)
            }
        }
    }

    /// All eigenvalues, ascending, with multiplicity.
    pub fn eigenvalues(&self) -> Option<Vec<f64>> {
        match self {
            CovMatrix::Real(m) => linalg::symmetric_eigenvalues(m.clone()),
            CovMatrix::Complex(m) => linalg::hermitian_eigenvalues(m.clone()),
        }
    }

    /// `t·𝟙 - self`.
    pub fn shifted_negative(&self, t: f64) -> CovMatrix {
        match self {
            CovMatrix::Real(m) => CovMatrix::Real(DMatrix::from_diagonal_element(m.nrows(), m.ncols(), t) - m),
            CovMatrix::Complex(m) => CovMatrix::Complex(
                DMatrix::from_diagonal_element(m.nrows(), m.ncols(), Complex64::new(t, 0.0)) - m,
            ),
        }
    }
}

/// `W W†`. Complex products go through real matrix multiplies:
/// `(A + iB)(A + iB)† = (AAᵀ + BBᵀ) + i(BAᵀ - ABᵀ)`.
pub fn wishart_matrix(w: &DataMatrix) -> CovMatrix {
    match &w.entries {
        Entries::Real(m) => {
            let mut out = m * m.transpose();
            symmetrize(&mut out);
            CovMatrix::Real(out)
        }
        Entries::Complex(m) => {
            let a = m.map(|z| z.re);
            let b = m.map(|z| z.im);
            let (at, bt) = (a.transpose(), b.transpose());
            let re = &a * &at + &b * &bt;
            let im = &b * &at - &a * &bt;
            let d = re.nrows();
            let mut out = DMatrix::<Complex64>::from_fn(d, d, |i, j| Complex64::new(re[(i, j)], im[(i, j)]));
            for i in 0..d {
                out[(i, i)].im = 0.0;
                for j in 0..i {
                    let avg = 0.5 * (out[(i, j)] + out[(j, i)].conj());
                    out[(i, j)] = avg;
                    out[(j, i)] = avg.conj();
                }
            }
            CovMatrix::Complex(out)
        }
    }
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let d = m.nrows();
    for i in 0..d {
        for j in 0..i {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// The `p` distinct eigenvalues of `W W†`, ascending. For β = 4 the Kramers
/// pairs are merged; a pair that fails to agree within [`KRAMERS_TOL`] is a
/// numerical failure.
pub fn distinct_eigenvalues(w: &DataMatrix) -> Option<Vec<f64>> {
    let all = wishart_matrix(w).eigenvalues()?;
    match w.beta {
        Beta::Quaternion => merge_kramers_pairs(&all),
        _ => Some(all),
    }
}

pub(crate) fn merge_kramers_pairs(all: &[f64]) -> Option<Vec<f64>> {
    if !all.len().is_multiple_of(2) {
        return None;
    }
    let scale = all.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    all.chunks_exact(2)
        .map(|pair| {
            if (pair[1] - pair[0]).abs() <= KRAMERS_TOL * scale {
                Some(0.5 * (pair[0] + pair[1]))
            } else {
                None
            }
        })
        .collect()
}

/// `(x_max, x_min)` over the distinct eigenvalues of `W W†`.
pub fn extreme_eigenvalues(w: &DataMatrix) -> Result<(f64, f64)> {
    let ev = distinct_eigenvalues(w).ok_or(Error::EigenFailure { trial: 0 })?;
    Ok((ev[ev.len() - 1], ev[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(beta: Beta, p: usize, n: usize) -> EnsembleConfig {
        EnsembleConfig { beta, p, n, spectrum: SpectrumSpec::Identity, seed: 1 }
    }

    #[test]
    fn beta_serde_uses_integers() {
        assert_eq!(serde_json::to_string(&Beta::Quaternion).unwrap(), "4");
        assert_eq!(serde_json::from_str::<Beta>("2").unwrap(), Beta::Complex);
        assert!(serde_json::from_str::<Beta>("3").is_err());
        assert_eq!(Beta::Quaternion.gamma2(), 2);
        assert_eq!(Beta::Real.gamma1(), 2.0);
        assert_eq!(Beta::Quaternion.gamma1(), 1.0);
    }

    #[test]
    fn identity_spectrum() {
        let s = build_spectrum(&SpectrumSpec::Identity, 100, &mut RandomStream::from_seed(0)).unwrap();
        assert!(s.lambdas.iter().all(|&l| l == 1.0));
        assert_eq!(s.variance(), 0.0);
        assert_eq!(s.alpha, None);
    }

    #[test]
    fn uniform_spectrum_bounds_and_moments() {
        let spec = SpectrumSpec::Uniform { mean: 1.0, var_exponent: 1.75 };
        let a = uniform_half_width(1.75, 100);
        assert!((a - 0.030800).abs() < 5e-6, "a = {a}");
        for seed in 0..20 {
            let s = build_spectrum(&spec, 100, &mut RandomStream::from_seed(seed)).unwrap();
            assert!((s.mean() - 1.0).abs() < 1e-12);
            let target = 100f64.powf(-1.75);
            assert!(((s.variance() - target) / target).abs() < 0.02);
            // the variance rescale stretches by well under one percent at p = 100
            assert!(s.lambdas.iter().all(|l| (l - 1.0).abs() <= a * 1.01));
            assert!(s.reconstruction_error() < 1e-12);
            assert!(s.trace_lambda1().abs() < 1e-9);
        }
    }

    #[test]
    fn oversized_variance_is_rejected() {
        let spec = SpectrumSpec::Uniform { mean: 0.1, var_exponent: 0.1 };
        let err = build_spectrum(&spec, 10, &mut RandomStream::from_seed(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidSpectrum(_)));
    }

    #[test]
    fn explicit_spectrum_decomposition() {
        let s = EmpiricalSpectrum::from_values(vec![0.5, 1.0, 1.5, 3.0]).unwrap();
        assert!((s.lambda_bar - 1.5).abs() < 1e-15);
        assert!(s.reconstruction_error() < 1e-12);
        assert!(s.trace_lambda1().abs() < 1e-9);
        let r = EmpiricalSpectrum::with_reference(vec![1.1, 1.3], 1.0, 1.75).unwrap();
        assert!(r.trace_lambda1() > 0.0);
        assert!(r.reconstruction_error() < 1e-12);
        assert!(EmpiricalSpectrum::from_values(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn scalar_case_variance_beta1() {
        let c = cfg(Beta::Real, 1, 1);
        let s = EmpiricalSpectrum::identity(1);
        let mut rng = RandomStream::from_seed(11);
        let draws = 100_000;
        let mut sum2 = 0.0;
        for _ in 0..draws {
            let w = sample_data_matrix(&c, &s, &mut rng).unwrap();
            let Entries::Real(m) = &w.entries else { unreachable!() };
            sum2 += m[(0, 0)] * m[(0, 0)];
        }
        let var = sum2 / draws as f64;
        assert!((var - 1.0).abs() < 3.0 * (2.0 / draws as f64).sqrt(), "var = {var}");
    }

    #[test]
    fn complex_second_moment_matches_lambda() {
        let c = cfg(Beta::Complex, 1, 1);
        let s = EmpiricalSpectrum::constant(1, 2.0);
        let mut rng = RandomStream::from_seed(12);
        let draws = 100_000;
        let vals: Vec<f64> = (0..draws)
            .map(|_| {
                let w = sample_data_matrix(&c, &s, &mut rng).unwrap();
                let Entries::Complex(m) = &w.entries else { unreachable!() };
                m[(0, 0)].norm_sqr()
            })
            .collect();
        let mean = vals.iter().sum::<f64>() / draws as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / draws as f64).sqrt();
        assert!((mean - 2.0).abs() < 3.0 * sd / (draws as f64).sqrt(), "mean = {mean}");
    }

    #[test]
    fn quaternion_blocks_are_self_dual() {
        let c = cfg(Beta::Quaternion, 3, 5);
        let s = EmpiricalSpectrum::from_values(vec![0.5, 1.0, 2.0]).unwrap();
        let w = sample_data_matrix(&c, &s, &mut RandomStream::from_seed(3)).unwrap();
        let Entries::Complex(m) = &w.entries else { unreachable!() };
        assert_eq!((m.nrows(), m.ncols()), (6, 10));
        assert_eq!(w.self_duality_residual(), 0.0);
    }

    #[test]
    fn quaternion_spectrum_is_kramers_degenerate() {
        let c = cfg(Beta::Quaternion, 6, 11);
        let s = EmpiricalSpectrum::identity(6);
        for seed in 0..5 {
            let w = sample_data_matrix(&c, &s, &mut RandomStream::from_seed(seed)).unwrap();
            let all = wishart_matrix(&w).eigenvalues().unwrap();
            let scale = all[all.len() - 1];
            for pair in all.chunks_exact(2) {
                assert!((pair[1] - pair[0]).abs() / scale < 1e-9);
            }
            assert_eq!(distinct_eigenvalues(&w).unwrap().len(), 6);
        }
    }

    #[test]
    fn wishart_of_identity_and_row_vector() {
        let id = DataMatrix::real(DMatrix::identity(3, 3));
        assert_eq!(wishart_matrix(&id), CovMatrix::Real(DMatrix::identity(3, 3)));
        let row = DataMatrix::real(DMatrix::from_row_slice(1, 2, &[3.0, 4.0]));
        let CovMatrix::Real(m) = wishart_matrix(&row) else { unreachable!() };
        assert_eq!(m[(0, 0)], 25.0);
    }

    #[test]
    fn extremes_of_diagonal_and_scalar_cases() {
        let d = DataMatrix::real(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]));
        let (hi, lo) = extreme_eigenvalues(&d).unwrap();
        assert!((hi - 4.0).abs() < 1e-14 && (lo - 1.0).abs() < 1e-14);

        let c = cfg(Beta::Complex, 1, 7);
        let w = sample_data_matrix(&c, &EmpiricalSpectrum::identity(1), &mut RandomStream::from_seed(5)).unwrap();
        let Entries::Complex(m) = &w.entries else { unreachable!() };
        let norm2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
        let (hi, lo) = extreme_eigenvalues(&w).unwrap();
        assert!((hi - norm2).abs() < 1e-12 * norm2 && hi == lo);
    }

    #[test]
    fn hermitian_residual_is_tiny() {
        for beta in Beta::ALL {
            let c = cfg(beta, 4, 9);
            let w = sample_data_matrix(&c, &EmpiricalSpectrum::identity(4), &mut RandomStream::from_seed(8)).unwrap();
            assert!(wishart_matrix(&w).hermiticity_residual() <= 1e-12);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let c = cfg(Beta::Real, 3, 4);
        let err = sample_data_matrix(&c, &EmpiricalSpectrum::identity(2), &mut RandomStream::from_seed(0)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = cfg(Beta::Complex, 3, 4);
        let s = EmpiricalSpectrum::identity(3);
        let a = sample_data_matrix(&c, &s, &mut RandomStream::for_trial(9, 4, 0)).unwrap();
        let b = sample_data_matrix(&c, &s, &mut RandomStream::for_trial(9, 4, 0)).unwrap();
        assert_eq!(a, b);
    }
}
