//! Flat `key = value` experiment files.
//!
//! ```text
//! # lengths in meters, k in 1/m
//! k = 1e7
//! h = 1e-3
//! l = 1
//! m = 1
//! d = 1e-9
//! y_min = -1e-3
//! y_max = 1e-3
//! y_steps = 201
//! ```
//!
//! `k h l m d` are required. `u1 u2` default to 0. The six grid keys are
//! needed only to sample a pattern; `*_steps` is the number of samples per
//! axis, endpoints included. `method` is optional.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::optics::{linspace, ExperimentConfig, Method, OpticsError};

const KEYS: [&str; 14] = [
    "k", "h", "l", "m", "d", "u1", "u2", "y_min", "y_max", "y_steps", "z_min", "z_max", "z_steps",
    "method",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing key {0:?}")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] OpticsError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn samples(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.steps)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternConfig {
    pub experiment: ExperimentConfig,
    pub y_axis: Option<Axis>,
    pub z_axis: Option<Axis>,
    pub method: Option<Method>,
}

impl PatternConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        text.parse()
    }

    /// Both axes, or the first missing grid key.
    pub fn axes(&self) -> Result<(Axis, Axis), ConfigError> {
        let y = self.y_axis.ok_or(ConfigError::Missing("y_min"))?;
        let z = self.z_axis.ok_or(ConfigError::Missing("z_min"))?;
        Ok((y, z))
    }
}

impl std::str::FromStr for PatternConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut raw: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fail = |reason: String| ConfigError::Parse { line: line_no, reason };
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| fail(format!("expected `key = value`, got {body:?}")))?;
            let key = key.trim();
            let key = KEYS
                .iter()
                .copied()
                .find(|k| *k == key)
                .ok_or_else(|| fail(format!("unknown key {key:?}")))?;
            if raw.insert(key, (line_no, value.trim().to_string())).is_some() {
                return Err(fail(format!("duplicate key {key:?}")));
            }
        }

        let number = |key: &'static str| -> Result<Option<f64>, ConfigError> {
            raw.get(key)
                .map(|(line, v)| {
                    v.parse::<f64>().map_err(|_| ConfigError::Parse {
                        line: *line,
                        reason: format!("{key} = {v:?} is not a number"),
                    })
                })
                .transpose()
        };
        let count = |key: &'static str| -> Result<Option<usize>, ConfigError> {
            raw.get(key)
                .map(|(line, v)| {
                    v.parse::<usize>().map_err(|_| ConfigError::Parse {
                        line: *line,
                        reason: format!("{key} = {v:?} is not a sample count"),
                    })
                })
                .transpose()
        };
        let required = |key: &'static str| number(key)?.ok_or(ConfigError::Missing(key));

        let experiment = ExperimentConfig::new(
            required("k")?,
            required("h")?,
            required("l")?,
            required("m")?,
            required("d")?,
        )?
        .with_u_interval(number("u1")?.unwrap_or(0.0), number("u2")?.unwrap_or(0.0))?;

        let axis = |prefix: &str, keys: [&'static str; 3]| -> Result<Option<Axis>, ConfigError> {
            let present = keys.iter().filter(|k| raw.contains_key(*k)).count();
            if present == 0 {
                return Ok(None);
            }
            let missing = keys.iter().find(|k| !raw.contains_key(*k));
            if let Some(k) = missing {
                return Err(ConfigError::Missing(k));
            }
            let a = Axis {
                min: number(keys[0])?.unwrap(),
                max: number(keys[1])?.unwrap(),
                steps: count(keys[2])?.unwrap(),
            };
            if !(a.min.is_finite() && a.max.is_finite()) || a.min > a.max || a.steps == 0 {
                let (line, _) = raw[keys[2]];
                return Err(ConfigError::Parse {
                    line,
                    reason: format!("{prefix} axis needs finite min <= max and at least one step"),
                });
            }
            Ok(Some(a))
        };
        let y_axis = axis("y", ["y_min", "y_max", "y_steps"])?;
        let z_axis = axis("z", ["z_min", "z_max", "z_steps"])?;

        let method = match raw.get("method") {
            None => None,
            Some((line, name)) => Some(Method::from_name(name).ok_or_else(|| ConfigError::Parse {
                line: *line,
                reason: format!("unknown method {name:?}"),
            })?),
        };
        Ok(PatternConfig { experiment, y_axis, z_axis, method })
    }
}
