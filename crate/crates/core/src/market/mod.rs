//! Finite scenario markets and the statistics of a portfolio's return.
//!
//! A [`ScenarioMarket`] is a finite sample space: `m` scenarios with
//! probabilities and an `n × m` table of asset returns. The return of a
//! portfolio `x` is the random variable `s(x) = Σ_i x_i s_i`, represented
//! exactly as a [`DiscreteDistribution`].

mod distribution;
mod portfolio;

pub use distribution::{
    sd_compare, sd_compare_with_tolerance, DiscreteDistribution, SdVerdict, DEFAULT_SAMPLES_PER_INTERVAL,
    DEGENERATE_VARIANCE, MERGE_TOLERANCE, SD_TOLERANCE,
};
pub use portfolio::{Ball, Domain, Portfolio, BOUNDARY_TOLERANCE, CENTER_SUM_TOLERANCE, WEIGHT_SUM_TOLERANCE};

use crate::error::{Error, Result};

/// Input probabilities may deviate from a unit sum by at most this much.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioMarket {
    probabilities: Vec<f64>,
    /// `returns[i][j]` is the return of asset `i` in scenario `j`.
    returns: Vec<Vec<f64>>,
    means: Vec<f64>,
}

impl ScenarioMarket {
    /// Validates the inputs and renormalizes the probabilities to sum to one.
    pub fn new(probabilities: Vec<f64>, returns: Vec<Vec<f64>>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidMarket("no scenarios".into()));
        }
        if returns.is_empty() {
            return Err(Error::InvalidMarket("no assets".into()));
        }
        let m = probabilities.len();
        for (i, row) in returns.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMarket(format!("asset {} has {} returns, expected {m}", i + 1, row.len())));
            }
            if row.iter().any(|r| !r.is_finite()) {
                return Err(Error::InvalidMarket(format!("asset {} has a non-finite return", i + 1)));
            }
        }
        if let Some((j, p)) = probabilities.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidMarket(format!("scenario {} has invalid probability {p}", j + 1)));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::InvalidMarket(format!("probabilities sum to {total}, expected 1")));
        }
        let probabilities: Vec<f64> = probabilities.into_iter().map(|p| p / total).collect();
        let means = returns.iter().map(|row| row.iter().zip(&probabilities).map(|(r, p)| r * p).sum()).collect();
        Ok(ScenarioMarket { probabilities, returns, means })
    }

    pub fn asset_count(&self) -> usize {
        self.returns.len()
    }

    pub fn scenario_count(&self) -> usize {
        self.probabilities.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn returns(&self) -> &[Vec<f64>] {
        &self.returns
    }

    /// Expected return of each asset.
    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// The market with every return mapped through `r ↦ scale·r + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        let returns = self.returns.iter().map(|row| row.iter().map(|r| scale * r + shift).collect()).collect();
        ScenarioMarket::new(self.probabilities.clone(), returns)
    }

    fn check(&self, x: &Portfolio) -> Result<()> {
        if x.len() != self.asset_count() {
            return Err(Error::DimensionMismatch { expected: self.asset_count(), found: x.len() });
        }
        Ok(())
    }

    /// `s(x)` evaluated in each scenario.
    pub fn scenario_returns(&self, x: &Portfolio) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok((0..self.scenario_count())
            .map(|j| x.weights().iter().zip(&self.returns).map(|(w, row)| w * row[j]).sum())
            .collect())
    }

    pub fn return_distribution(&self, x: &Portfolio) -> Result<DiscreteDistribution> {
        DiscreteDistribution::from_outcomes(&self.scenario_returns(x)?, &self.probabilities)
    }

    /// `Σ_i x_i μ_i`, computed from asset means rather than the distribution.
    pub fn expected_return(&self, x: &Portfolio) -> Result<f64> {
        self.check(x)?;
        Ok(x.weights().iter().zip(&self.means).map(|(w, mu)| w * mu).sum())
    }

    pub fn central_moment(&self, x: &Portfolio, order: u32) -> Result<f64> {
        if order < 2 {
            return Err(Error::InvalidOrder { what: "central moment", value: order, min: 2 });
        }
        self.return_distribution(x)?.central_moment(order)
    }

    pub fn variance(&self, x: &Portfolio) -> Result<f64> {
        Ok(self.return_distribution(x)?.variance())
    }

    pub fn skewness(&self, x: &Portfolio) -> Result<f64> {
        self.return_distribution(x)?.skewness()
    }

    pub fn excess_kurtosis(&self, x: &Portfolio) -> Result<f64> {
        self.return_distribution(x)?.excess_kurtosis()
    }
}
