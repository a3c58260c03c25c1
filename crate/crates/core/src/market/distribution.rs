use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Outcomes closer than this are merged into one support point.
pub const MERGE_TOLERANCE: f64 = 1e-12;
/// Skewness and kurtosis are undefined below this variance.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;
/// Default number of interior points per interval for third and higher
/// order dominance checks.
pub const DEFAULT_SAMPLES_PER_INTERVAL: usize = 16;
/// Default absolute tolerance for dominance curve differences.
pub const SD_TOLERANCE: f64 = 1e-12;

/// A finitely supported distribution on the real line.
///
/// The support is strictly increasing, every mass is positive and the
/// masses sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    support: Vec<f64>,
    masses: Vec<f64>,
}

impl DiscreteDistribution {
    /// Builds a distribution from raw outcomes and their probabilities,
    /// merging outcomes within [`MERGE_TOLERANCE`] of each other.
    pub fn from_outcomes(values: &[f64], probabilities: &[f64]) -> Result<Self> {
        Self::from_outcomes_with_tolerance(values, probabilities, MERGE_TOLERANCE)
    }

    pub fn from_outcomes_with_tolerance(values: &[f64], probabilities: &[f64], merge_tolerance: f64) -> Result<Self> {
        if values.len() != probabilities.len() {
            return Err(Error::DimensionMismatch { expected: values.len(), found: probabilities.len() });
        }
        if values.iter().chain(probabilities).any(|v| !v.is_finite()) {
            return Err(Error::InvalidDistribution("non-finite outcome or probability".into()));
        }
        if let Some(p) = probabilities.iter().find(|&&p| p < 0.0) {
            return Err(Error::InvalidDistribution(format!("negative probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }

        let mut outcomes: Vec<(f64, f64)> =
            values.iter().copied().zip(probabilities.iter().copied()).filter(|&(_, p)| p > 0.0).collect();
        outcomes.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut support: Vec<f64> = Vec::with_capacity(outcomes.len());
        let mut masses: Vec<f64> = Vec::with_capacity(outcomes.len());
        for (value, mass) in outcomes {
            match support.last() {
                Some(&anchor) if value - anchor <= merge_tolerance => {
                    *masses.last_mut().unwrap() += mass;
                }
                _ => {
                    support.push(value);
                    masses.push(mass);
                }
            }
        }
        let total: f64 = masses.iter().sum();
        masses.iter_mut().for_each(|m| *m /= total);
        Ok(DiscreteDistribution { support, masses })
    }

    /// The point mass at `value`.
    pub fn point(value: f64) -> Self {
        DiscreteDistribution { support: vec![value], masses: vec![1.0] }
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.support[0]
    }

    pub fn max(&self) -> f64 {
        self.support[self.support.len() - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.masses.iter().copied())
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(s, m)| s * m).sum()
    }

    /// `E[s^order]`.
    pub fn raw_moment(&self, order: u32) -> f64 {
        self.iter().map(|(s, m)| m * s.powi(order as i32)).sum()
    }

    /// `E[(s - E s)^order]` for `order >= 2`.
    pub fn central_moment(&self, order: u32) -> Result<f64> {
        if order < 2 {
            return Err(Error::InvalidOrder { what: "central moment", value: order, min: 2 });
        }
        Ok(self.central_moment_unchecked(order))
    }

    fn central_moment_unchecked(&self, order: u32) -> f64 {
        let mean = self.mean();
        self.iter().map(|(s, m)| m * (s - mean).powi(order as i32)).sum()
    }

    pub fn variance(&self) -> f64 {
        self.central_moment_unchecked(2)
    }

    fn checked_variance(&self, threshold: f64) -> Result<f64> {
        let variance = self.variance();
        if variance < threshold {
            return Err(Error::DegenerateDistribution { variance, threshold });
        }
        Ok(variance)
    }

    pub fn skewness(&self) -> Result<f64> {
        self.skewness_with_threshold(DEGENERATE_VARIANCE)
    }

    pub fn skewness_with_threshold(&self, threshold: f64) -> Result<f64> {
        let variance = self.checked_variance(threshold)?;
        Ok(self.central_moment_unchecked(3) / variance.powf(1.5))
    }

    pub fn excess_kurtosis(&self) -> Result<f64> {
        self.excess_kurtosis_with_threshold(DEGENERATE_VARIANCE)
    }

    pub fn excess_kurtosis_with_threshold(&self, threshold: f64) -> Result<f64> {
        let variance = self.checked_variance(threshold)?;
        Ok(self.central_moment_unchecked(4) / (variance * variance) - 3.0)
    }

    /// `P(s < t)`. Strict inequality makes this a left-continuous step
    /// function: the mass sitting at `t` is not counted.
    pub fn cdf(&self, t: f64) -> f64 {
        let k = self.support.partition_point(|&s| s < t);
        self.masses[..k].iter().fold(0.0, |acc, m| acc + m).min(1.0)
    }

    /// `P(s <= t)`, the right limit of [`cdf`](Self::cdf) at `t`.
    pub fn cdf_right(&self, t: f64) -> f64 {
        let k = self.support.partition_point(|&s| s <= t);
        self.masses[..k].iter().fold(0.0, |acc, m| acc + m).min(1.0)
    }

    /// The iterated integral `D^(order)(t)` of the CDF.
    ///
    /// `D^(1) = F` and `D^(l)(t) = ∫_{-∞}^t D^(l-1)`. For a discrete
    /// distribution this is `Σ_k m_k (t - s_k)_+^(l-1) / (l-1)!` when `l >= 2`.
    pub fn sd_integral(&self, order: u32, t: f64) -> Result<f64> {
        match order {
            0 => Err(Error::InvalidOrder { what: "stochastic dominance", value: 0, min: 1 }),
            1 => Ok(self.cdf(t)),
            _ => Ok(self.sd_integral_unchecked(order, t)),
        }
    }

    fn sd_integral_unchecked(&self, order: u32, t: f64) -> f64 {
        if order == 1 {
            return self.cdf(t);
        }
        let degree = (order - 1) as i32;
        let factorial: f64 = (1..order).map(f64::from).product();
        let k = self.support.partition_point(|&s| s < t);
        self.iter().take(k).fold(0.0, |acc, (s, m)| acc + m * (t - s).powi(degree)) / factorial
    }
}

/// Outcome of comparing two distributions under `l`-th order stochastic
/// dominance, from the point of view of "is `x` dominated by `y`".
///
/// Non-strict dominance without any strict point is equality of the curves,
/// so it is reported as [`SdVerdict::Equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SdVerdict {
    /// `D_y <= D_x` everywhere with strict inequality somewhere.
    YDominatesStrictly,
    /// `D_x <= D_y` everywhere with strict inequality somewhere.
    XDominatesStrictly,
    Equal,
    Incomparable,
}

impl SdVerdict {
    /// `x` is (weakly) dominated by `y`.
    pub fn y_dominates(self) -> bool {
        matches!(self, SdVerdict::YDominatesStrictly | SdVerdict::Equal)
    }

    /// `y` is (weakly) dominated by `x`.
    pub fn x_dominates(self) -> bool {
        matches!(self, SdVerdict::XDominatesStrictly | SdVerdict::Equal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SdVerdict::YDominatesStrictly => "y_dominates_strictly",
            SdVerdict::XDominatesStrictly => "x_dominates_strictly",
            SdVerdict::Equal => "equal",
            SdVerdict::Incomparable => "incomparable",
        }
    }
}

/// Compares `x` and `y` under `order`-th order stochastic dominance over all
/// real `t`.
///
/// First and second order checks are exact: the curve difference is a step
/// function (resp. piecewise linear) whose extremes lie at support points or
/// their right limits. From third order on, the difference is a piecewise
/// polynomial and is sampled at `samples_per_interval` interior points per
/// interval, on the tail beyond the largest support point, and at `t → ∞`
/// through its leading coefficient.
pub fn sd_compare(
    x: &DiscreteDistribution,
    y: &DiscreteDistribution,
    order: u32,
    samples_per_interval: usize,
) -> Result<SdVerdict> {
    sd_compare_with_tolerance(x, y, order, samples_per_interval, SD_TOLERANCE)
}

pub fn sd_compare_with_tolerance(
    x: &DiscreteDistribution,
    y: &DiscreteDistribution,
    order: u32,
    samples_per_interval: usize,
    tolerance: f64,
) -> Result<SdVerdict> {
    if order == 0 {
        return Err(Error::InvalidOrder { what: "stochastic dominance", value: 0, min: 1 });
    }
    let mut points: Vec<f64> = x.support.iter().chain(&y.support).copied().collect();
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut above = false;
    let mut below = false;
    let mut observe = |d: f64| {
        if d > tolerance {
            above = true;
        } else if d < -tolerance {
            below = true;
        }
    };
    let diff = |t: f64| y.sd_integral_unchecked(order, t) - x.sd_integral_unchecked(order, t);

    for &t in &points {
        observe(diff(t));
    }
    match order {
        1 => {
            for &t in &points {
                observe(y.cdf_right(t) - x.cdf_right(t));
            }
        }
        2 => observe(x.mean() - y.mean()),
        _ => {
            let samples = samples_per_interval.max(1);
            for pair in points.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                for k in 1..=samples {
                    observe(diff(a + (b - a) * k as f64 / (samples + 1) as f64));
                }
            }
            let last = points[points.len() - 1];
            let span = (last - points[0]).max(1.0);
            for k in 1..=samples {
                observe(diff(last + span * k as f64 / samples as f64));
            }
            match tail_direction(x, y, order, tolerance) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
        }
    }

    Ok(match (above, below) {
        (false, false) => SdVerdict::Equal,
        (false, true) => SdVerdict::YDominatesStrictly,
        (true, false) => SdVerdict::XDominatesStrictly,
        (true, true) => SdVerdict::Incomparable,
    })
}

/// Sign of `D_y(t) - D_x(t)` as `t → ∞`.
///
/// Beyond both supports, `(l-1)! D(t) = Σ_j C(l-1, j) (-1)^j E[s^j] t^(l-1-j)`,
/// so the sign follows the first raw moment `j >= 1` on which the two
/// distributions differ.
fn tail_direction(x: &DiscreteDistribution, y: &DiscreteDistribution, order: u32, tolerance: f64) -> Ordering {
    for j in 1..order {
        let mx = x.raw_moment(j);
        let my = y.raw_moment(j);
        let scale = 1.0f64.max(mx.abs()).max(my.abs());
        let delta = my - mx;
        if delta.abs() > tolerance * scale {
            let signed = if j % 2 == 0 { delta } else { -delta };
            return if signed > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(support: &[f64], masses: &[f64]) -> DiscreteDistribution {
        DiscreteDistribution::from_outcomes(support, masses).unwrap()
    }

    #[test]
    fn merges_close_outcomes() {
        let d = dist(&[2.5, 0.5, 0.5 + 1e-13, 2.5], &[0.25, 0.25, 0.25, 0.25]);
        assert_eq!(d.support(), &[0.5, 2.5]);
        assert_eq!(d.masses(), &[0.5, 0.5]);
        let d = dist(&[1.0, 2.0], &[1.0, 0.0]);
        assert_eq!(d.support(), &[1.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(DiscreteDistribution::from_outcomes(&[1.0], &[0.5]).is_err());
        assert!(DiscreteDistribution::from_outcomes(&[1.0, 2.0], &[1.5, -0.5]).is_err());
        assert!(DiscreteDistribution::from_outcomes(&[1.0, 2.0], &[1.0]).is_err());
        assert!(DiscreteDistribution::from_outcomes(&[f64::INFINITY], &[1.0]).is_err());
    }

    #[test]
    fn moments_of_two_point_distribution() {
        let d = dist(&[0.5, 2.5], &[0.5, 0.5]);
        assert_eq!(d.mean(), 1.5);
        assert_eq!(d.central_moment(2).unwrap(), 1.0);
        assert_eq!(d.central_moment(3).unwrap(), 0.0);
        assert_eq!(d.skewness().unwrap(), 0.0);
        assert_eq!(d.excess_kurtosis().unwrap(), -2.0);
        assert!(d.central_moment(1).is_err());
    }

    #[test]
    fn skewed_distribution() {
        // third moment 0.75(-1)^3 + 0.25(3)^3 = 6, variance 3
        let d = dist(&[0.0, 4.0], &[0.75, 0.25]);
        assert!((d.central_moment(3).unwrap() - 6.0).abs() < 1e-12);
        assert!((d.variance() - 3.0).abs() < 1e-12);
        let expected = 6.0 / 3f64.powf(1.5);
        assert!((d.skewness().unwrap() - expected).abs() < 1e-12);
        assert!((d.skewness().unwrap() - 1.1547005383792515).abs() < 1e-12);
    }

    #[test]
    fn kurtosis_is_scale_free_for_symmetric_two_points() {
        for a in [1e-3, 0.5, 1.0, 7.0, 1e4] {
            let d = dist(&[-a, a], &[0.5, 0.5]);
            assert!((d.excess_kurtosis().unwrap() + 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_distribution_errors() {
        let d = DiscreteDistribution::point(1.0);
        assert!(matches!(d.skewness(), Err(Error::DegenerateDistribution { .. })));
        assert!(matches!(d.excess_kurtosis(), Err(Error::DegenerateDistribution { .. })));
        assert_eq!(d.central_moment(4).unwrap(), 0.0);
    }

    #[test]
    fn cdf_is_left_continuous() {
        let d = dist(&[0.5, 2.5], &[0.5, 0.5]);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.cdf_right(0.5), 0.5);
        assert_eq!(d.cdf(1.0), 0.5);
        assert_eq!(d.cdf(2.5), 0.5);
        assert_eq!(d.cdf(10.0), 1.0);
        assert_eq!(d.cdf(-10.0), 0.0);
    }

    #[test]
    fn sd_integral_values() {
        let d = dist(&[0.5, 2.5], &[0.5, 0.5]);
        assert!((d.sd_integral(2, 3.0).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(d.sd_integral(2, 0.0).unwrap(), 0.0);
        assert_eq!(d.sd_integral(1, 1.0).unwrap(), 0.5);
        assert_eq!(DiscreteDistribution::point(1.0).sd_integral(2, 2.0).unwrap(), 1.0);
        // 0.5 * 2.5^2 / 2 + 0.5 * 0.5^2 / 2
        assert!((d.sd_integral(3, 3.0).unwrap() - 1.625).abs() < 1e-12);
        assert!(d.sd_integral(0, 1.0).is_err());
    }

    #[test]
    fn sd_integral_matches_trapezoid_of_cdf() {
        // ∫_{-∞}^{3} P(s < τ) dτ on a fine grid; F is constant between nodes
        // except at the two support points, which are grid nodes.
        let d = dist(&[0.5, 2.5], &[0.5, 0.5]);
        let h = 1e-3;
        let steps = 3000;
        let mut integral = 0.0;
        for i in 0..steps {
            let a = i as f64 * h;
            let b = a + h;
            let left = d.cdf_right(a);
            let right = d.cdf(b);
            integral += 0.5 * h * (left + right);
        }
        assert!((integral - 1.5).abs() < 1e-9);
    }

    #[test]
    fn first_order_verdicts() {
        let x = DiscreteDistribution::point(1.0);
        let y = dist(&[0.0, 4.0], &[0.5, 0.5]);
        assert_eq!(sd_compare(&x, &y, 1, 16).unwrap(), SdVerdict::Incomparable);
        assert_eq!(sd_compare(&y, &y, 1, 16).unwrap(), SdVerdict::Equal);
        let low = DiscreteDistribution::point(0.0);
        let high = DiscreteDistribution::point(1.0);
        assert_eq!(sd_compare(&low, &high, 1, 16).unwrap(), SdVerdict::YDominatesStrictly);
        assert_eq!(sd_compare(&high, &low, 1, 16).unwrap(), SdVerdict::XDominatesStrictly);
        assert!(sd_compare(&low, &high, 0, 16).is_err());
    }

    #[test]
    fn second_order_prefers_less_spread() {
        // same mean, y is a mean-preserving contraction of x
        let x = dist(&[0.0, 4.0], &[0.5, 0.5]);
        let y = DiscreteDistribution::point(2.0);
        assert_eq!(sd_compare(&x, &y, 1, 16).unwrap(), SdVerdict::Incomparable);
        assert_eq!(sd_compare(&x, &y, 2, 16).unwrap(), SdVerdict::YDominatesStrictly);
        assert_eq!(sd_compare(&x, &y, 3, 16).unwrap(), SdVerdict::YDominatesStrictly);
    }

    #[test]
    fn tail_decides_higher_orders() {
        // D^(2) curves cross only through the asymptote: y has a larger mean
        // but a fatter left tail
        let x = DiscreteDistribution::point(1.0);
        let y = dist(&[-1.0, 10.0], &[0.5, 0.5]);
        assert_eq!(sd_compare(&x, &y, 2, 16).unwrap(), SdVerdict::Incomparable);
        assert_eq!(tail_direction(&x, &y, 3, SD_TOLERANCE), Ordering::Less);
    }
}
