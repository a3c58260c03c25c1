//! The preference relation `R(u, v)` induced by two families of objectives.
//!
//! `xRy` holds when every member of the u-family is at least as large at `y`
//! as at `x` and every member of the v-family is at most as large. Its
//! symmetric part `E` is an equivalence; its asymmetric part `F = R \ E`
//! reads "`y` is definitely better than `x`". An element is maximal
//! (generalized efficient) when nothing is definitely better.
//!
//! Comparisons use a tolerance `ε`: `a ≤ b` means `a ≤ b + ε` and values
//! within `ε` of each other are equal. With `ε = 0` the comparisons are
//! exact and `R` is transitive; with `ε > 0` transitivity is only
//! guaranteed when objective gaps exceed `2ε`.

mod chain;
mod table;
mod verdict;

pub use chain::{ChainReport, PairRecord};
pub use table::{FrontierResult, ScoreTable};
pub use verdict::{compare, weakly_below, DominanceVerdict, Relation};

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::KernelInstance;
use crate::market::{DiscreteDistribution, Portfolio, ScenarioMarket};

/// Default comparison tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Member of the u-family.
    Maximize,
    /// Member of the v-family.
    Minimize,
}

/// What to do when skewness or kurtosis is requested for a zero-variance
/// return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DegeneratePolicy {
    Error,
    #[default]
    TreatAsZero,
}

/// A user-supplied objective.
#[derive(Clone)]
pub struct CustomObjective {
    label: String,
    f: Arc<dyn Fn(&Portfolio) -> f64 + Send + Sync>,
}

impl CustomObjective {
    pub fn new(label: impl Into<String>, f: impl Fn(&Portfolio) -> f64 + Send + Sync + 'static) -> Self {
        CustomObjective { label: label.into(), f: Arc::new(f) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for CustomObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("CustomObjective").field(&self.label).finish()
    }
}

impl PartialEq for CustomObjective {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && Arc::ptr_eq(&self.f, &other.f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectiveKind {
    ExpectedReturn,
    Variance,
    CentralMoment(u32),
    /// Square of the skewness.
    SkewSquared,
    /// Square of the excess kurtosis.
    KurtSquared,
    /// `D^(order)(t)`, the iterated CDF integral at a fixed `t`.
    SdCurve {
        order: u32,
        t: f64,
    },
    /// `x ↦ f(x, p)` for a kernel `f` and element `x` encoded as a simplex vertex.
    KernelColumn(usize),
    /// `x ↦ f(p, x)`.
    KernelRow(usize),
    Custom(CustomObjective),
}

impl ObjectiveKind {
    fn needs_market(&self) -> bool {
        !matches!(self, ObjectiveKind::KernelColumn(_) | ObjectiveKind::KernelRow(_) | ObjectiveKind::Custom(_))
    }

    fn needs_distribution(&self) -> bool {
        self.needs_market() && *self != ObjectiveKind::ExpectedReturn
    }

    pub fn label(&self) -> String {
        match self {
            ObjectiveKind::ExpectedReturn => "mean".into(),
            ObjectiveKind::Variance => "variance".into(),
            ObjectiveKind::CentralMoment(l) => format!("moment{l}"),
            ObjectiveKind::SkewSquared => "skew_sq".into(),
            ObjectiveKind::KurtSquared => "kurt_sq".into(),
            ObjectiveKind::SdCurve { order, t } => format!("sd{order}@{t}"),
            ObjectiveKind::KernelColumn(p) => format!("f(x;{p})"),
            ObjectiveKind::KernelRow(p) => format!("f({p};x)"),
            ObjectiveKind::Custom(c) => c.label.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub kind: ObjectiveKind,
    pub direction: Direction,
    pub degenerate_policy: DegeneratePolicy,
}

impl ObjectiveSpec {
    pub fn maximize(kind: ObjectiveKind) -> Self {
        ObjectiveSpec { kind, direction: Direction::Maximize, degenerate_policy: DegeneratePolicy::default() }
    }

    pub fn minimize(kind: ObjectiveKind) -> Self {
        ObjectiveSpec { kind, direction: Direction::Minimize, degenerate_policy: DegeneratePolicy::default() }
    }

    pub fn with_policy(mut self, policy: DegeneratePolicy) -> Self {
        self.degenerate_policy = policy;
        self
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            ObjectiveKind::CentralMoment(l) if l < 2 => {
                Err(Error::InvalidOrder { what: "central moment", value: l, min: 2 })
            }
            ObjectiveKind::SdCurve { order: 0, .. } => {
                Err(Error::InvalidOrder { what: "stochastic dominance", value: 0, min: 1 })
            }
            ObjectiveKind::SdCurve { t, .. } if !t.is_finite() => {
                Err(Error::InvalidObjective(format!("dominance curve point {t} is not finite")))
            }
            ObjectiveKind::SdCurve { .. } if self.direction != Direction::Minimize => {
                Err(Error::InvalidObjective("dominance curves are always minimized".into()))
            }
            _ => Ok(()),
        }
    }

    fn value(
        &self,
        x: &Portfolio,
        market: Option<&ScenarioMarket>,
        kernel: Option<&KernelInstance>,
        dist: Option<&DiscreteDistribution>,
    ) -> Result<f64> {
        let dist = || dist.expect("distribution computed for market objectives");
        let degenerate = |r: Result<f64>| match r {
            Ok(s) => Ok(s * s),
            Err(Error::DegenerateDistribution { variance, .. })
                if self.degenerate_policy == DegeneratePolicy::TreatAsZero =>
            {
                log::debug!("{} undefined at variance {variance:e}; using 0", self.kind.label());
                Ok(0.0)
            }
            Err(e) => Err(e),
        };
        let vertex = || {
            x.vertex_index().ok_or_else(|| Error::InvalidPortfolio("kernel objectives need a simplex vertex".into()))
        };
        match &self.kind {
            ObjectiveKind::ExpectedReturn => market.expect("validated").expected_return(x),
            ObjectiveKind::Variance => Ok(dist().variance()),
            ObjectiveKind::CentralMoment(l) => dist().central_moment(*l),
            ObjectiveKind::SkewSquared => degenerate(dist().skewness()),
            ObjectiveKind::KurtSquared => degenerate(dist().excess_kurtosis()),
            ObjectiveKind::SdCurve { order, t } => dist().sd_integral(*order, *t),
            ObjectiveKind::KernelColumn(p) => kernel.expect("validated").get(vertex()?, *p),
            ObjectiveKind::KernelRow(p) => kernel.expect("validated").get(*p, vertex()?),
            ObjectiveKind::Custom(c) => Ok((c.f)(x)),
        }
    }
}

/// A bound preorder: both objective families, the market (or kernel) they
/// are evaluated against, and the comparison tolerance.
#[derive(Debug, Clone)]
pub struct PreorderInstance {
    u_family: Vec<ObjectiveSpec>,
    v_family: Vec<ObjectiveSpec>,
    market: Option<Arc<ScenarioMarket>>,
    kernel: Option<Arc<KernelInstance>>,
    epsilon: f64,
}

#[derive(Debug, Clone, Default)]
pub struct PreorderBuilder {
    u_family: Vec<ObjectiveSpec>,
    v_family: Vec<ObjectiveSpec>,
    market: Option<Arc<ScenarioMarket>>,
    kernel: Option<Arc<KernelInstance>>,
    epsilon: Option<f64>,
}

impl PreorderBuilder {
    /// Adds an objective to the family matching its direction.
    pub fn objective(mut self, spec: ObjectiveSpec) -> Self {
        match spec.direction {
            Direction::Maximize => self.u_family.push(spec),
            Direction::Minimize => self.v_family.push(spec),
        }
        self
    }

    pub fn maximize(self, kind: ObjectiveKind) -> Self {
        self.objective(ObjectiveSpec::maximize(kind))
    }

    pub fn minimize(self, kind: ObjectiveKind) -> Self {
        self.objective(ObjectiveSpec::minimize(kind))
    }

    pub fn market(mut self, market: Arc<ScenarioMarket>) -> Self {
        self.market = Some(market);
        self
    }

    pub fn kernel(mut self, kernel: Arc<KernelInstance>) -> Self {
        self.kernel = Some(kernel);
        self
    }

    pub fn epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self
    }

    pub fn build(self) -> Result<PreorderInstance> {
        if self.u_family.is_empty() && self.v_family.is_empty() {
            return Err(Error::InvalidObjective("both objective families are empty".into()));
        }
        let epsilon = self.epsilon.unwrap_or(DEFAULT_EPSILON);
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidObjective(format!("tolerance must be finite and >= 0, got {epsilon}")));
        }
        for spec in self.u_family.iter().chain(&self.v_family) {
            spec.validate()?;
            if spec.kind.needs_market() && self.market.is_none() {
                return Err(Error::InvalidObjective(format!("objective {} needs a market", spec.kind.label())));
            }
            if let ObjectiveKind::KernelColumn(p) | ObjectiveKind::KernelRow(p) = spec.kind {
                let kernel = self.kernel.as_ref().ok_or_else(|| {
                    Error::InvalidObjective(format!("objective {} needs a kernel", spec.kind.label()))
                })?;
                if p >= kernel.size() {
                    return Err(Error::IndexOutOfRange { index: p, len: kernel.size() });
                }
            }
        }
        Ok(PreorderInstance {
            u_family: self.u_family,
            v_family: self.v_family,
            market: self.market,
            kernel: self.kernel,
            epsilon,
        })
    }
}

/// Result of [`PreorderInstance::ascend_to_maximal`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ascent {
    pub maximal: Portfolio,
    /// Starts at the query portfolio; each step is a strict improvement.
    pub path: Vec<Portfolio>,
}

impl PreorderInstance {
    pub fn builder() -> PreorderBuilder {
        PreorderBuilder::default()
    }

    pub fn u_family(&self) -> &[ObjectiveSpec] {
        &self.u_family
    }

    pub fn v_family(&self) -> &[ObjectiveSpec] {
        &self.v_family
    }

    /// u-family then v-family.
    pub fn objectives(&self) -> impl Iterator<Item = &ObjectiveSpec> {
        self.u_family.iter().chain(&self.v_family)
    }

    pub fn labels(&self) -> Vec<String> {
        self.objectives().map(|o| o.kind.label()).collect()
    }

    pub fn market(&self) -> Option<&Arc<ScenarioMarket>> {
        self.market.as_ref()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// A copy with a different tolerance.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidObjective(format!("tolerance must be finite and >= 0, got {epsilon}")));
        }
        Ok(PreorderInstance { epsilon, ..self.clone() })
    }

    /// Objective values of `x`, u-family first.
    pub fn evaluate(&self, x: &Portfolio) -> Result<Vec<f64>> {
        let market = self.market.as_deref();
        let dist = match market {
            Some(m) if self.objectives().any(|o| o.kind.needs_distribution()) => Some(m.return_distribution(x)?),
            _ => None,
        };
        self.objectives().map(|o| o.value(x, market, self.kernel.as_deref(), dist.as_ref())).collect()
    }

    /// Evaluates every candidate (in parallel) into a score table whose tie
    /// keys are the portfolio weights.
    pub fn score(&self, candidates: &[Portfolio]) -> Result<ScoreTable> {
        let rows = candidates.par_iter().map(|x| self.evaluate(x)).collect::<Result<Vec<_>>>()?;
        let keys = candidates.iter().map(|x| x.weights().to_vec()).collect();
        ScoreTable::new(self.u_family.len(), rows, self.epsilon)?.with_tie_keys(keys)
    }

    pub fn relate(&self, x: &Portfolio, y: &Portfolio) -> Result<DominanceVerdict> {
        Ok(compare(self.u_family.len(), &self.evaluate(x)?, &self.evaluate(y)?, self.epsilon))
    }

    /// No candidate is definitely better than `x`.
    pub fn is_maximal(&self, x: &Portfolio, candidates: &[Portfolio]) -> Result<bool> {
        let table = self.score(candidates)?;
        Ok(table.is_vector_maximal(&self.evaluate(x)?))
    }

    /// The classical efficiency test over `candidates`; needs exactly one
    /// objective in each family.
    pub fn is_markowitz_efficient(&self, x: &Portfolio, candidates: &[Portfolio]) -> Result<bool> {
        let (table, index) = self.score_with(x, candidates)?;
        table.is_markowitz_efficient(index)
    }

    pub fn maximal_set(&self, candidates: &[Portfolio]) -> Result<FrontierResult> {
        if candidates.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        self.score(candidates)?.maximal_set()
    }

    /// Walks from `x` through strict improvements to a maximal candidate.
    pub fn ascend_to_maximal(&self, x: &Portfolio, candidates: &[Portfolio]) -> Result<Ascent> {
        let (table, start) = self.score_with(x, candidates)?;
        let lookup = |i: usize| if i < candidates.len() { candidates[i].clone() } else { x.clone() };
        let path: Vec<Portfolio> = table.ascend(start)?.into_iter().map(lookup).collect();
        Ok(Ascent { maximal: path.last().expect("path starts at x").clone(), path })
    }

    /// Every pair in `subset` is comparable.
    pub fn verify_chain(&self, subset: &[Portfolio]) -> Result<bool> {
        let table = self.score(subset)?;
        Ok(table.is_chain(&(0..subset.len()).collect::<Vec<_>>()))
    }

    pub fn chain_report(&self, chain: &[Portfolio]) -> Result<ChainReport> {
        self.score(chain)?.chain_report(&(0..chain.len()).collect::<Vec<_>>())
    }

    /// The greatest element of a finite chain.
    pub fn chain_upper_bound(&self, chain: &[Portfolio]) -> Result<Portfolio> {
        let index = self.score(chain)?.chain_upper_bound(&(0..chain.len()).collect::<Vec<_>>())?;
        Ok(chain[index].clone())
    }

    /// Scores `candidates` and locates `x` among them, appending it when
    /// absent.
    fn score_with(&self, x: &Portfolio, candidates: &[Portfolio]) -> Result<(ScoreTable, usize)> {
        match candidates.iter().position(|c| c.weights() == x.weights()) {
            Some(i) => Ok((self.score(candidates)?, i)),
            None => {
                let mut all = candidates.to_vec();
                all.push(x.clone());
                Ok((self.score(&all)?, candidates.len()))
            }
        }
    }
}
