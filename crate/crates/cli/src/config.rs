//! Experiment configuration: TOML files with a strict schema, plus the
//! compact sweep syntax used on the command line (`16:256:*2`).

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Schema(#[from] toml::de::Error),
    #[error("bad sweep '{0}': expected 'start:stop:*factor' or a comma list")]
    Sweep(String),
}

/// Knobs an experiment accepts. Unknown keys are rejected so a typo in
/// a config file fails loudly instead of silently running defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub name: Option<String>,
    /// Eigenspace degrees n (integer sweeps).
    pub degrees: Option<Vec<usize>>,
    /// Band limits lambda (real sweeps).
    pub lambdas: Option<Vec<f64>>,
    /// Integrability exponents.
    pub p: Option<Vec<f64>>,
    pub region: Option<String>,
    pub measure: Option<String>,
    /// Grid oversampling factor on top of the exactness requirement.
    pub oversample: Option<usize>,
    pub seed: Option<u64>,
    /// Time values for heat experiments.
    pub t: Option<Vec<f64>>,
    /// Complex-time angles for heat experiments.
    pub angles: Option<Vec<f64>>,
    /// Probe scale multipliers for density sweeps.
    pub r: Option<Vec<f64>>,
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(s)?)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

/// Sweep syntax: `a:b:*f` for the geometric sequence a, a*f, ... <= b
/// (with b included when it lands within one part in 1e9), or a plain
/// comma-separated list.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, ConfigError> {
    let bad = || ConfigError::Sweep(spec.to_string());
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let factor: f64 = parts[2].trim().strip_prefix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if !(start > 0.0) || !(stop >= start) || !(factor > 1.0) {
            return Err(bad());
        }
        let mut out = Vec::new();
        let mut x = start;
        while x <= stop * (1.0 + 1e-9) {
            out.push(x);
            x *= factor;
        }
        Ok(out)
    } else {
        spec.split(',')
            .map(|tok| tok.trim().parse::<f64>().map_err(|_| bad()))
            .collect()
    }
}

/// Integer version of `parse_sweep` for degree lists.
pub fn parse_degree_sweep(spec: &str) -> Result<Vec<usize>, ConfigError> {
    let vals = parse_sweep(spec)?;
    vals.iter()
        .map(|&v| {
            let n = v.round();
            if (v - n).abs() < 1e-9 && n >= 1.0 {
                Ok(n as usize)
            } else {
                Err(ConfigError::Sweep(spec.to_string()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_schema() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            name = "zonal-norms"
            degrees = [16, 32, 64]
            p = [2.0, 6.0]
            seed = 7
            region = "all"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.name.as_deref(), Some("zonal-norms"));
        assert_eq!(cfg.degrees.as_deref(), Some(&[16, 32, 64][..]));
        assert_eq!(cfg.seed(), 7);
    }

    #[test]
    fn rejects_unknown_keys() {
        let err = ExperimentConfig::from_toml_str("lambda_max = 12").unwrap_err();
        assert!(err.to_string().contains("lambda_max"));
    }

    #[test]
    fn sweep_forms() {
        assert_eq!(parse_sweep("16:256:*2").unwrap(), vec![16.0, 32.0, 64.0, 128.0, 256.0]);
        assert_eq!(parse_sweep("1, 2.5, 10").unwrap(), vec![1.0, 2.5, 10.0]);
        assert_eq!(parse_degree_sweep("4:16:*2").unwrap(), vec![4, 8, 16]);
        assert!(parse_sweep("16:8:*2").is_err());
        assert!(parse_sweep("16:256:2").is_err());
        assert!(parse_degree_sweep("2.5,3").is_err());
    }
}
