use std::sync::Arc;

use crate::error::{Error, Result};

/// Weights must sum to one within this tolerance.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;
/// Slack allowed below zero for simplex weights and beyond the ball radius.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;
/// Tolerance for a ball center lying on the hyperplane `sum(x) = 1`.
pub const CENTER_SUM_TOLERANCE: f64 = 1e-12;

/// A closed ball inside the affine hyperplane `sum(x) = 1`. Portfolios in
/// such a ball may hold bounded short positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidDomain("ball center has no coordinates".into()));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain("ball center has non-finite coordinates".into()));
        }
        let sum: f64 = center.iter().sum();
        if (sum - 1.0).abs() > CENTER_SUM_TOLERANCE {
            return Err(Error::InvalidDomain(format!("ball center must lie on sum(x) = 1, coordinates sum to {sum}")));
        }
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidDomain(format!("ball radius must be finite and >= 0, got {radius}")));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn distance_from_center(&self, weights: &[f64]) -> f64 {
        weights.iter().zip(&self.center).map(|(w, c)| (w - c) * (w - c)).sum::<f64>().sqrt()
    }

    /// True when the whole simplex lies inside the ball.
    pub fn contains_simplex(&self) -> bool {
        let n = self.center.len();
        (0..n).all(|i| {
            let vertex: Vec<f64> = (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect();
            self.distance_from_center(&vertex) <= self.radius + BOUNDARY_TOLERANCE
        })
    }
}

/// Which domain a portfolio was validated against.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Simplex,
    Ball(Arc<Ball>),
}

/// A vector of asset weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    weights: Vec<f64>,
    domain: Domain,
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidPortfolio("no weights".into()));
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::InvalidPortfolio("non-finite weight".into()));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::InvalidPortfolio(format!("weights sum to {sum}, expected 1")));
    }
    Ok(())
}

impl Portfolio {
    /// A long-only portfolio on the simplex.
    pub fn simplex(weights: Vec<f64>) -> Result<Self> {
        check_weights(&weights)?;
        if let Some(w) = weights.iter().find(|&&w| w < -BOUNDARY_TOLERANCE) {
            return Err(Error::InvalidPortfolio(format!("negative weight {w} outside the simplex")));
        }
        Ok(Portfolio { weights, domain: Domain::Simplex })
    }

    /// A portfolio inside a short-sales ball.
    pub fn in_ball(weights: Vec<f64>, ball: &Arc<Ball>) -> Result<Self> {
        check_weights(&weights)?;
        if weights.len() != ball.dimension() {
            return Err(Error::DimensionMismatch { expected: ball.dimension(), found: weights.len() });
        }
        let dist = ball.distance_from_center(&weights);
        if dist > ball.radius() + BOUNDARY_TOLERANCE {
            return Err(Error::InvalidPortfolio(format!(
                "distance {dist} from center exceeds radius {}",
                ball.radius()
            )));
        }
        Ok(Portfolio { weights, domain: Domain::Ball(Arc::clone(ball)) })
    }

    /// The pure portfolio holding only asset `index`.
    pub fn vertex(asset_count: usize, index: usize) -> Result<Self> {
        if index >= asset_count {
            return Err(Error::IndexOutOfRange { index, len: asset_count });
        }
        let mut weights = vec![0.0; asset_count];
        weights[index] = 1.0;
        Portfolio::simplex(weights)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Index of the single unit weight, if this portfolio is a simplex vertex.
    pub fn vertex_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &w) in self.weights.iter().enumerate() {
            if w == 1.0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            } else if w != 0.0 {
                return None;
            }
        }
        found
    }
}
