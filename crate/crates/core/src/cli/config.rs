//! Run configuration for `genmark frontier`.
//!
//! The file is a flat list of `key = value` lines. Blank lines and lines
//! starting with `#` are ignored; keys may appear once. Relative paths are
//! resolved against the directory holding the file.
//!
//! | key               | value                                             |
//! |-------------------|---------------------------------------------------|
//! | `market`          | scenario CSV path                                 |
//! | `domain.kind`     | `simplex` or `ball`                               |
//! | `domain.n`        | asset count (defaults to the market's)            |
//! | `domain.N`        | grid resolution                                   |
//! | `domain.samples`  | random sample count (instead of `domain.N`)       |
//! | `domain.seed`     | sampling seed, default 0                          |
//! | `domain.center`   | ball center, comma separated (default barycenter) |
//! | `domain.radius`   | ball radius                                       |
//! | `preset`          | preset name; `sd` and `markowitz-sd` take `sd.ell` |
//! | `objectives`      | `;`-separated objective entries (instead of a preset) |
//! | `epsilon`         | comparison tolerance                              |
//! | `sd.ell`          | dominance order for `sd` presets                  |
//! | `sd.samples`      | interior samples per interval for order >= 3      |
//! | `output.frontier` | frontier CSV path                                 |
//! | `output.plot`     | plot TSV path                                     |
//! | `plot.x`, `plot.y`| objective index or label for the plot columns     |
//! | `threads`         | worker threads                                    |

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use super::io::parse_weights;
use crate::domain::{DomainKind, DomainSpec, FamilyConfig, ObjectiveConfig, ObjectiveEntry, Preset, Resolution};
use crate::error::{Error, Result};
use crate::market::{Ball, DEFAULT_SAMPLES_PER_INTERVAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DomainChoice {
    #[default]
    Simplex,
    Ball,
}

impl FromStr for DomainChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(DomainChoice::Simplex),
            "ball" => Ok(DomainChoice::Ball),
            _ => Err(Error::Config(format!("unknown domain kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub market: Option<PathBuf>,
    pub domain: Option<DomainChoice>,
    pub n: Option<usize>,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub center: Option<Vec<f64>>,
    pub radius: Option<f64>,
    pub preset: Option<String>,
    pub objectives: Option<Vec<ObjectiveEntry>>,
    pub epsilon: Option<f64>,
    pub sd_ell: Option<u32>,
    pub sd_samples: Option<usize>,
    pub frontier_out: Option<PathBuf>,
    pub plot_out: Option<PathBuf>,
    pub plot_x: Option<String>,
    pub plot_y: Option<String>,
    pub threads: Option<usize>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

pub fn parse_objectives(s: &str) -> Result<Vec<ObjectiveEntry>> {
    s.split(';').map(str::trim).filter(|e| !e.is_empty()).map(str::parse).collect()
}

impl RunConfig {
    pub fn parse(text: &str, base: &Path, label: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { path: label.to_string(), line: i as u64 + 1, message };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            let path = |v: &str| {
                let p = PathBuf::from(v);
                if p.is_absolute() {
                    p
                } else {
                    base.join(p)
                }
            };
            let wrap = |e: Error| err(e.to_string());
            match key {
                "market" => config.market = Some(path(value)),
                "domain.kind" => config.domain = Some(parse(key, value).map_err(wrap)?),
                "domain.n" => config.n = Some(parse(key, value).map_err(wrap)?),
                "domain.N" => config.grid = Some(parse(key, value).map_err(wrap)?),
                "domain.samples" => config.samples = Some(parse(key, value).map_err(wrap)?),
                "domain.seed" => config.seed = Some(parse(key, value).map_err(wrap)?),
                "domain.center" => config.center = Some(parse_weights(value).map_err(wrap)?),
                "domain.radius" => config.radius = Some(parse(key, value).map_err(wrap)?),
                "preset" => config.preset = Some(value.to_string()),
                "objectives" => config.objectives = Some(parse_objectives(value).map_err(wrap)?),
                "epsilon" => config.epsilon = Some(parse(key, value).map_err(wrap)?),
                "sd.ell" => config.sd_ell = Some(parse(key, value).map_err(wrap)?),
                "sd.samples" => config.sd_samples = Some(parse(key, value).map_err(wrap)?),
                "output.frontier" => config.frontier_out = Some(path(value)),
                "output.plot" => config.plot_out = Some(path(value)),
                "plot.x" => config.plot_x = Some(value.to_string()),
                "plot.y" => config.plot_y = Some(value.to_string()),
                "threads" => config.threads = Some(parse(key, value).map_err(wrap)?),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        RunConfig::parse(&text, base, &path.display().to_string())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(self, other: RunConfig) -> RunConfig {
        RunConfig {
            market: other.market.or(self.market),
            domain: other.domain.or(self.domain),
            n: other.n.or(self.n),
            grid: other.grid.or(self.grid),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            center: other.center.or(self.center),
            radius: other.radius.or(self.radius),
            preset: other.preset.or(self.preset),
            objectives: other.objectives.or(self.objectives),
            epsilon: other.epsilon.or(self.epsilon),
            sd_ell: other.sd_ell.or(self.sd_ell),
            sd_samples: other.sd_samples.or(self.sd_samples),
            frontier_out: other.frontier_out.or(self.frontier_out),
            plot_out: other.plot_out.or(self.plot_out),
            plot_x: other.plot_x.or(self.plot_x),
            plot_y: other.plot_y.or(self.plot_y),
            threads: other.threads.or(self.threads),
        }
    }

    pub fn samples_per_interval(&self) -> usize {
        self.sd_samples.unwrap_or(DEFAULT_SAMPLES_PER_INTERVAL)
    }

    pub fn objective_config(&self) -> Result<ObjectiveConfig> {
        let family = match (&self.preset, &self.objectives) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either a preset or explicit objectives, not both".into()))
            }
            (None, None) => return Err(Error::Config("no preset or objectives given".into())),
            (None, Some(entries)) => FamilyConfig::Explicit(entries.clone()),
            (Some(name), None) => {
                let preset = match (name.as_str(), self.sd_ell) {
                    ("sd", Some(l)) => Preset::Sd(l),
                    ("markowitz-sd", Some(l)) => Preset::MarkowitzSd(l),
                    ("sd" | "markowitz-sd", None) => {
                        return Err(Error::Config(format!("preset `{name}` needs sd.ell / --ell")))
                    }
                    (other, _) => other.parse()?,
                };
                FamilyConfig::Preset(preset)
            }
        };
        Ok(ObjectiveConfig { family, epsilon: self.epsilon })
    }

    pub fn domain_spec(&self, asset_count: usize) -> Result<DomainSpec> {
        let n = self.n.unwrap_or(asset_count);
        if n != asset_count {
            return Err(Error::Config(format!("domain.n = {n} but the market has {asset_count} assets")));
        }
        let resolution = match (self.grid, self.samples) {
            (Some(g), None) => Resolution::Grid(g),
            (None, Some(count)) => Resolution::Random { count, seed: self.seed.unwrap_or(0) },
            (Some(_), Some(_)) => return Err(Error::Config("give either a grid or a sample count, not both".into())),
            (None, None) => return Err(Error::Config("no grid resolution or sample count given".into())),
        };
        let kind = match self.domain.unwrap_or_default() {
            DomainChoice::Simplex => DomainKind::Simplex { n },
            DomainChoice::Ball => {
                let radius = self.radius.ok_or_else(|| Error::Config("ball domain needs a radius".into()))?;
                let center = self.center.clone().unwrap_or_else(|| vec![1.0 / n as f64; n]);
                if center.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: center.len() });
                }
                DomainKind::Ball(Arc::new(Ball::new(center, radius)?))
            }
        };
        Ok(DomainSpec { kind, resolution })
    }
}
