use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::market::{Portfolio, ScenarioMarket};
use crate::preorder::{DegeneratePolicy, Direction, ObjectiveKind, ObjectiveSpec, PreorderInstance};

/// Named objective families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Maximize expected return alone.
    Utility,
    /// Maximize expected return, minimize variance.
    Markowitz,
    /// Markowitz plus squared skewness.
    Skew,
    /// Markowitz plus squared excess kurtosis.
    Kurt,
    /// Markowitz plus squared skewness and squared excess kurtosis.
    SkewKurt,
    /// Minimize `D^(l)(t)` over the t-grid.
    Sd(u32),
    /// Markowitz plus `D^(l)(t)` over the t-grid.
    MarkowitzSd(u32),
}

impl Preset {
    pub const ALL_FIXED: [Preset; 5] =
        [Preset::Utility, Preset::Markowitz, Preset::Skew, Preset::Kurt, Preset::SkewKurt];

    pub fn entries(self) -> Vec<ObjectiveEntry> {
        use EntryKind::*;
        let (u, v): (Vec<EntryKind>, Vec<EntryKind>) = match self {
            Preset::Utility => (vec![Mean], vec![]),
            Preset::Markowitz => (vec![Mean], vec![Variance]),
            Preset::Skew => (vec![Mean], vec![Variance, SkewSquared]),
            Preset::Kurt => (vec![Mean], vec![Variance, KurtSquared]),
            Preset::SkewKurt => (vec![Mean], vec![Variance, SkewSquared, KurtSquared]),
            Preset::Sd(l) => (vec![], vec![Sd(l)]),
            Preset::MarkowitzSd(l) => (vec![Mean], vec![Variance, Sd(l)]),
        };
        u.into_iter()
            .map(|k| ObjectiveEntry::new(k, Direction::Maximize))
            .chain(v.into_iter().map(|k| ObjectiveEntry::new(k, Direction::Minimize)))
            .collect()
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Utility => f.write_str("utility"),
            Preset::Markowitz => f.write_str("markowitz"),
            Preset::Skew => f.write_str("skew"),
            Preset::Kurt => f.write_str("kurt"),
            Preset::SkewKurt => f.write_str("skew-kurt"),
            Preset::Sd(l) => write!(f, "sd-{l}"),
            Preset::MarkowitzSd(l) => write!(f, "markowitz-sd-{l}"),
        }
    }
}

fn parse_order(s: &str, name: &str) -> Result<u32> {
    match s.parse::<u32>() {
        Ok(l) if l >= 1 => Ok(l),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "utility" => Preset::Utility,
            "markowitz" => Preset::Markowitz,
            "skew" => Preset::Skew,
            "kurt" => Preset::Kurt,
            "skew-kurt" => Preset::SkewKurt,
            _ => {
                if let Some(l) = s.strip_prefix("markowitz-sd-") {
                    Preset::MarkowitzSd(parse_order(l, s)?)
                } else if let Some(l) = s.strip_prefix("sd-") {
                    Preset::Sd(parse_order(l, s)?)
                } else {
                    return Err(Error::UnknownPreset(s.to_string()));
                }
            }
        })
    }
}

/// Objective kinds available in configuration files. `Sd(l)` stands for the
/// whole family `D^(l)(t)` and is expanded over a finite t-grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Mean,
    Variance,
    Moment(u32),
    SkewSquared,
    KurtSquared,
    Sd(u32),
}

/// One configured objective: `kind[:direction][:policy]`, for example
/// `mean:max`, `moment(4):min`, `skew2:min:error` or `sd(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObjectiveEntry {
    pub kind: EntryKind,
    pub direction: Direction,
    pub policy: DegeneratePolicy,
}

impl ObjectiveEntry {
    pub fn new(kind: EntryKind, direction: Direction) -> Self {
        ObjectiveEntry { kind, direction, policy: DegeneratePolicy::default() }
    }
}

fn parse_parenthesized(s: &str, prefix: &str) -> Option<Result<u32>> {
    let rest = s.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
    Some(
        inner
            .and_then(|i| i.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::Config(format!("bad order in objective `{s}`"))),
    )
}

impl FromStr for ObjectiveEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':').map(str::trim);
        let kind_str = parts.next().unwrap_or_default();
        let kind = match kind_str {
            "mean" => EntryKind::Mean,
            "variance" => EntryKind::Variance,
            "skew2" => EntryKind::SkewSquared,
            "kurt2" => EntryKind::KurtSquared,
            other => {
                if let Some(l) = parse_parenthesized(other, "moment") {
                    EntryKind::Moment(l?)
                } else if let Some(l) = parse_parenthesized(other, "sd") {
                    EntryKind::Sd(l?)
                } else {
                    return Err(Error::Config(format!("unknown objective kind `{other}`")));
                }
            }
        };
        let direction = match parts.next() {
            None if kind == EntryKind::Mean => Direction::Maximize,
            None => Direction::Minimize,
            Some("max") => Direction::Maximize,
            Some("min") => Direction::Minimize,
            Some(d) => return Err(Error::Config(format!("unknown direction `{d}` in `{s}`"))),
        };
        let policy = match parts.next() {
            None | Some("zero") => DegeneratePolicy::TreatAsZero,
            Some("error") => DegeneratePolicy::Error,
            Some(p) => return Err(Error::Config(format!("unknown degenerate policy `{p}` in `{s}`"))),
        };
        if let Some(extra) = parts.next() {
            return Err(Error::Config(format!("unexpected `{extra}` in objective `{s}`")));
        }
        Ok(ObjectiveEntry { kind, direction, policy })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyConfig {
    Preset(Preset),
    Explicit(Vec<ObjectiveEntry>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveConfig {
    pub family: FamilyConfig,
    pub epsilon: Option<f64>,
}

impl ObjectiveConfig {
    pub fn preset(preset: Preset) -> Self {
        ObjectiveConfig { family: FamilyConfig::Preset(preset), epsilon: None }
    }

    fn entries(&self) -> Vec<ObjectiveEntry> {
        match &self.family {
            FamilyConfig::Preset(p) => p.entries(),
            FamilyConfig::Explicit(e) => e.clone(),
        }
    }
}

/// Finite stand-in for "all real `t`": every support point of every
/// candidate's return, the midpoints between consecutive points, and one
/// point beyond each extreme.
pub fn sd_grid(market: &ScenarioMarket, candidates: &[Portfolio]) -> Result<Vec<f64>> {
    let mut points = Vec::new();
    for x in candidates {
        points.extend_from_slice(market.return_distribution(x)?.support());
    }
    if points.is_empty() {
        return Err(Error::MissingCandidates);
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    let (lo, hi) = (points[0], points[points.len() - 1]);
    let pad = if hi > lo { hi - lo } else { 1.0 };
    let mut grid = Vec::with_capacity(2 * points.len() + 1);
    grid.push(lo - pad);
    for pair in points.windows(2) {
        grid.push(pair[0]);
        grid.push(0.5 * (pair[0] + pair[1]));
    }
    grid.push(hi);
    grid.push(hi + pad);
    Ok(grid)
}

/// Binds an objective configuration to a market. Candidates are required
/// only when a dominance-curve family has to be finitized.
pub fn build_preorder(
    config: &ObjectiveConfig,
    market: Arc<ScenarioMarket>,
    candidates: Option<&[Portfolio]>,
) -> Result<PreorderInstance> {
    let entries = config.entries();
    let grid = if entries.iter().any(|e| matches!(e.kind, EntryKind::Sd(_))) {
        match candidates {
            Some(c) if !c.is_empty() => Some(sd_grid(&market, c)?),
            _ => return Err(Error::MissingCandidates),
        }
    } else {
        None
    };

    let mut builder = PreorderInstance::builder().market(market);
    if let Some(eps) = config.epsilon {
        builder = builder.epsilon(eps);
    }
    for entry in entries {
        let spec =
            |kind: ObjectiveKind| ObjectiveSpec { kind, direction: entry.direction, degenerate_policy: entry.policy };
        match entry.kind {
            EntryKind::Mean => builder = builder.objective(spec(ObjectiveKind::ExpectedReturn)),
            EntryKind::Variance => builder = builder.objective(spec(ObjectiveKind::Variance)),
            EntryKind::Moment(l) => builder = builder.objective(spec(ObjectiveKind::CentralMoment(l))),
            EntryKind::SkewSquared => builder = builder.objective(spec(ObjectiveKind::SkewSquared)),
            EntryKind::KurtSquared => builder = builder.objective(spec(ObjectiveKind::KurtSquared)),
            EntryKind::Sd(order) => {
                for &t in grid.as_deref().expect("grid built for dominance families") {
                    builder = builder.objective(spec(ObjectiveKind::SdCurve { order, t }));
                }
            }
        }
    }
    builder.build()
}
