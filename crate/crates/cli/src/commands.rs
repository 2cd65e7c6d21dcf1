use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::Utc;

use corrwish::ensemble::Beta;
use corrwish::harness::{fmt_sig, run_experiment_with_threads, write_outputs, ExperimentConfig};
use corrwish::oracle::gap_grid_beta2;
use corrwish::scaling::variance_condition;
use corrwish::tracywidom::{GseConvention, TWDistribution};

use crate::config::{invalid, load, CliError, ConditionQuery, OracleQuery, Result};
use crate::manifest::RunManifest;

/// Runs the experiment; `Ok(false)` when `ks_max` is given and missed.
pub fn simulate(
    config_path: &Path,
    out: Option<PathBuf>,
    threads: Option<usize>,
    seed: Option<u64>,
    ks_max: Option<f64>,
) -> Result<bool> {
    let started = Utc::now();
    let mut cfg: ExperimentConfig = load(config_path)?;
    if let Some(s) = seed {
        cfg.ensemble.seed = s;
    }
    cfg.validate().map_err(|e| invalid(config_path, e))?;
    let out_dir = out
        .or_else(|| cfg.out_dir.clone())
        .ok_or_else(|| invalid(config_path, "no output directory: set `out_dir` or pass --out"))?;
    cfg.out_dir = Some(out_dir.clone());

    let result = run_experiment_with_threads(&cfg, threads)?;
    write_outputs(&result, &out_dir)?;
    let manifest = RunManifest::new(&cfg, config_path, &out_dir, threads, started)?;
    fs::write(out_dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;

    let mut ok = true;
    for e in &result.edges {
        let boundary = e.fit.is_some_and(|f| f.at_boundary);
        println!("{}: KS = {}{}", e.edge, fmt_sig(e.ks), if boundary { " (fit at boundary)" } else { "" });
        if let Some(limit) = ks_max {
            ok &= e.ks <= limit && !boundary;
        }
    }
    if !ok {
        eprintln!("check failed: KS above {} or fit at boundary", fmt_sig(ks_max.unwrap_or(f64::NAN)));
    }
    Ok(ok)
}

fn parse_convention(name: Option<&str>) -> Result<GseConvention> {
    match name {
        None => Ok(GseConvention::DEFAULT),
        Some(s) => GseConvention::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown convention {s:?}; expected sqrt2, unscaled or soft_edge"))),
    }
}

pub fn tw_table(betas: &[u8], from: f64, to: f64, convention: Option<&str>, out: Option<&Path>) -> Result<bool> {
    if !(from < to) {
        return Err(CliError::Usage(format!("empty grid: from = {from}, to = {to}")));
    }
    let convention = parse_convention(convention)?;
    let dists = betas
        .iter()
        .map(|&b| Ok(TWDistribution::with_convention(Beta::try_from(b)?, convention)))
        .collect::<Result<Vec<_>>>()?;
    let mut csv = String::from("chi");
    for d in &dists {
        let b = d.beta();
        let _ = write!(csv, ",F{b},f{b}");
    }
    csv.push('\n');
    // integer grid indices keep the χ column free of rounding drift
    let (lo, hi) = ((from * 100.0).ceil() as i64, (to * 100.0).floor() as i64);
    for k in lo..=hi {
        let chi = k as f64 / 100.0;
        csv.push_str(&fmt_sig(chi));
        for d in &dists {
            let _ = write!(csv, ",{},{}", fmt_sig(d.cdf(chi)), fmt_sig(d.pdf(chi)));
        }
        csv.push('\n');
    }
    emit(&csv, out)?;
    Ok(true)
}

pub fn oracle(config_path: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<bool> {
    let q: OracleQuery = load(config_path)?;
    if q.beta != Beta::Complex {
        return Err(invalid(config_path, format!("exact gap probabilities need beta = 2, got {}", q.beta)));
    }
    let spectrum = q.spectrum.resolve(config_path, seed)?;
    let rows = gap_grid_beta2(q.kind, &spectrum.lambdas, q.n, &q.thresholds)?;
    let mut csv = String::from("threshold,probability,est_error\n");
    for (t, (v, err)) in q.thresholds.iter().zip(rows) {
        let err = err.map_or_else(|| "nan".to_string(), fmt_sig);
        let _ = writeln!(csv, "{},{},{}", fmt_sig(*t), fmt_sig(v), err);
    }
    emit(&csv, out)?;
    Ok(true)
}

/// Prints the condition report; `Ok(false)` when the exponent is at most 2/3.
pub fn condition(config_path: &Path, n: Option<usize>, seed: Option<u64>) -> Result<bool> {
    let q: ConditionQuery = load(config_path)?;
    let n = n.or(q.n).ok_or_else(|| invalid(config_path, "no sample size: set `n` or pass --n"))?;
    let spectrum = q.spectrum.resolve(config_path, seed)?;
    if n < spectrum.p() {
        return Err(invalid(config_path, format!("need p <= n, got p = {}, n = {n}", spectrum.p())));
    }
    let report = variance_condition(&spectrum, n);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.pass)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}
