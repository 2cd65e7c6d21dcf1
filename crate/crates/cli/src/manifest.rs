//! Run manifest: enough to repeat an experiment exactly.

use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};

use corrwish::harness::ExperimentConfig;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    /// SHA-256 of the canonical JSON of `config`.
    pub config_hash: String,
    pub config_path: PathBuf,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub threads: Option<usize>,
    pub started_at: String,
    pub finished_at: String,
    /// Effective configuration after command-line overrides, without `out_dir`.
    pub config: serde_json::Value,
}

/// Compact JSON with object keys in sorted order.
pub fn canonical_json(cfg: &ExperimentConfig) -> serde_json::Result<(serde_json::Value, String)> {
    let mut cfg = cfg.clone();
    cfg.out_dir = None;
    // serde_json's default map is ordered by key
    let value = serde_json::to_value(&cfg)?;
    let text = serde_json::to_string(&value)?;
    Ok((value, text))
}

pub fn config_hash(canonical: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(canonical.as_bytes()))
}

pub fn timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn new(
        cfg: &ExperimentConfig,
        config_path: &Path,
        out_dir: &Path,
        threads: Option<usize>,
        started: DateTime<Utc>,
    ) -> serde_json::Result<Self> {
        let (config, text) = canonical_json(cfg)?;
        Ok(Self {
            tool: "corrwish",
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config_hash(&text),
            config_path: config_path.to_path_buf(),
            out_dir: out_dir.to_path_buf(),
            seed: cfg.ensemble.seed,
            threads,
            started_at: timestamp(started),
            finished_at: timestamp(Utc::now()),
            config,
        })
    }
}
