//! Run configuration: TOML file merged under command-line flags.

use std::path::{Path, PathBuf};

use carlitz_core::field::FieldTower;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::suites::REGISTRY;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Flags shared by `verify` and `compute`. Every field left unset falls back to the
/// config file, then to the per-suite default.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Size of the constant field F_q (suites otherwise use their own q lists).
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree of the coefficient extension F_{q^d} over F_q.
    #[arg(long)]
    pub ext_deg: Option<u32>,
    /// Precision in u = 1/θ.
    #[arg(long)]
    pub u_prec: Option<i64>,
    /// Number of t-coefficients.
    #[arg(long)]
    pub t_prec: Option<usize>,
    /// τ-order for operator series.
    #[arg(long)]
    pub tau_order: Option<usize>,
    /// Degree bound (eigen polynomials, L-series blocks).
    #[arg(long)]
    pub deg_max: Option<u32>,
    /// Relative tolerance for numeric checks.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suites run concurrently (1 also disables data parallelism inside kernels).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, env = "CARLITZ_CONFIG")]
    pub config: Option<PathBuf>,
    /// Include wall-clock times in the report (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub timings: bool,
}

/// Keys accepted in the config file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub q: Option<u64>,
    pub ext_deg: Option<u32>,
    pub u_prec: Option<i64>,
    pub t_prec: Option<usize>,
    pub tau_order: Option<usize>,
    pub deg_max: Option<u32>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub suites: Option<Vec<String>>,
    /// Random triples per backend in `skew-algebra`.
    pub samples: Option<usize>,
    /// Extra seeded sample points for the gamma suites.
    pub gamma_random_samples: Option<usize>,
    pub timings: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: Box<toml::de::Error> },
    #[error("unknown suite '{0}' (see `carlitz list`)")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q: Option<u64>,
    pub ext_deg: u32,
    pub u_prec: Option<i64>,
    pub t_prec: Option<usize>,
    pub tau_order: usize,
    pub deg_max: Option<u32>,
    pub tol: Option<f64>,
    pub suites: Vec<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub gamma_random_samples: usize,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: None,
            ext_deg: 1,
            u_prec: None,
            t_prec: None,
            tau_order: 8,
            deg_max: None,
            tol: None,
            suites: Vec::new(),
            format: None,
            out: None,
            jobs: None,
            seed: 1,
            samples: 200,
            gamma_random_samples: 0,
            timings: false,
        }
    }
}

pub fn load_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse { path: path.into(), source: Box::new(e) })
}

impl RunConfig {
    /// Flags over file over defaults, then validated. No suite runs before this succeeds.
    pub fn resolve(flags: &CommonArgs, suites: &[String]) -> Result<Self, ConfigError> {
        let file = match &flags.config {
            Some(p) => load_file(p)?,
            None => FileConfig::default(),
        };
        let d = RunConfig::default();
        let cfg = RunConfig {
            q: flags.q.or(file.q),
            ext_deg: flags.ext_deg.or(file.ext_deg).unwrap_or(d.ext_deg),
            u_prec: flags.u_prec.or(file.u_prec),
            t_prec: flags.t_prec.or(file.t_prec),
            tau_order: flags.tau_order.or(file.tau_order).unwrap_or(d.tau_order),
            deg_max: flags.deg_max.or(file.deg_max),
            tol: flags.tol.or(file.tol),
            suites: if suites.is_empty() { file.suites.unwrap_or_default() } else { suites.to_vec() },
            format: flags.format.or(file.format),
            out: flags.out.clone().or(file.out),
            jobs: flags.jobs.or(file.jobs),
            seed: flags.seed.or(file.seed).unwrap_or(d.seed),
            samples: file.samples.unwrap_or(d.samples),
            gamma_random_samples: file.gamma_random_samples.unwrap_or(d.gamma_random_samples),
            timings: flags.timings || file.timings.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if let Some(name) = self.suites.iter().find(|s| !REGISTRY.iter().any(|e| e.name == s.as_str())) {
            return Err(ConfigError::UnknownSuite(name.clone()));
        }
        if let Some(q) = self.q {
            if let Err(e) = FieldTower::new(q, self.ext_deg, 1) {
                return bad(e.to_string());
            }
        } else if self.ext_deg == 0 {
            return bad("ext_deg must be positive".into());
        }
        if self.u_prec.is_some_and(|u| u <= 0) {
            return bad("u_prec must be positive".into());
        }
        for (name, v) in [
            ("t_prec", self.t_prec),
            ("tau_order", Some(self.tau_order)),
            ("deg_max", self.deg_max.map(|d| d as usize)),
            ("jobs", self.jobs),
            ("samples", Some(self.samples)),
        ] {
            if v == Some(0) {
                return bad(format!("{name} must be positive"));
            }
        }
        if self.tol.is_some_and(|t| !(t.is_finite() && t > 0.0)) {
            return bad("tol must be a positive number".into());
        }
        Ok(())
    }

    /// Suites to run, in report order.
    pub fn selected(&self) -> Vec<&'static str> {
        let mut names: Vec<&'static str> = REGISTRY
            .iter()
            .map(|e| e.name)
            .filter(|n| self.suites.is_empty() || self.suites.iter().any(|s| s == n))
            .collect();
        names.sort_unstable();
        names
    }

    pub fn qs(&self, default: &[u64]) -> Vec<u64> {
        self.q.map_or_else(|| default.to_vec(), |q| vec![q])
    }

    pub fn u(&self, default: i64) -> i64 {
        self.u_prec.unwrap_or(default)
    }

    pub fn t(&self, default: usize) -> usize {
        self.t_prec.unwrap_or(default)
    }

    pub fn deg(&self, default: u32) -> u32 {
        self.deg_max.unwrap_or(default)
    }

    /// Everything that can change a result; echoed at the top of each report.
    pub fn echo(&self) -> Value {
        json!({
            "q": self.q,
            "ext_deg": self.ext_deg,
            "u_prec": self.u_prec,
            "t_prec": self.t_prec,
            "tau_order": self.tau_order,
            "deg_max": self.deg_max,
            "tol": self.tol,
            "seed": self.seed,
            "samples": self.samples,
            "gamma_random_samples": self.gamma_random_samples,
            "suites": self.selected(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "q = 3\nu_prec = 50\nseed = 9\nsuites = [\"leibniz\"]\n").unwrap();
        let flags = CommonArgs { config: Some(path), u_prec: Some(20), ..Default::default() };
        let cfg = RunConfig::resolve(&flags, &[]).unwrap();
        assert_eq!((cfg.q, cfg.u_prec, cfg.seed), (Some(3), Some(20), 9));
        assert_eq!(cfg.selected(), vec!["leibniz"]);
    }

    #[test]
    fn rejects_bad_values() {
        let unknown = RunConfig::resolve(&CommonArgs::default(), &["bogus".into()]);
        assert!(matches!(unknown, Err(ConfigError::UnknownSuite(_))));
        for flags in [
            CommonArgs { u_prec: Some(0), ..Default::default() },
            CommonArgs { q: Some(6), ..Default::default() },
            CommonArgs { tol: Some(-1.0), ..Default::default() },
            CommonArgs { jobs: Some(0), ..Default::default() },
        ] {
            assert!(matches!(RunConfig::resolve(&flags, &[]), Err(ConfigError::Invalid(_))), "{flags:?}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "uprec = 3\n").unwrap();
        assert!(matches!(load_file(&path), Err(ConfigError::Parse { .. })));
    }
}
