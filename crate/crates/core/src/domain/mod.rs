//! Finite candidate sets for the portfolio domains: lattice grids on the
//! simplex, lattice grids in a short-sales ball, and seeded random samples.

mod presets;

pub use presets::{build_preorder, sd_grid, EntryKind, FamilyConfig, ObjectiveConfig, ObjectiveEntry, Preset};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::market::{Ball, Portfolio};

/// Largest candidate set a grid may produce.
pub const DEFAULT_CAP: u64 = 10_000_000;
/// Rejection-sampling attempts allowed per accepted ball point.
pub const DEFAULT_REJECTION_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    Simplex { n: usize },
    Ball(Arc<Ball>),
}

impl DomainKind {
    pub fn asset_count(&self) -> usize {
        match self {
            DomainKind::Simplex { n } => *n,
            DomainKind::Ball(b) => b.dimension(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Grid(usize),
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub resolution: Resolution,
}

impl DomainSpec {
    pub fn candidates(&self) -> Result<Vec<Portfolio>> {
        match (&self.kind, self.resolution) {
            (DomainKind::Simplex { n }, Resolution::Grid(steps)) => simplex_grid(*n, steps),
            (DomainKind::Ball(ball), Resolution::Grid(steps)) => ball_grid(ball, steps),
            (kind, Resolution::Random { count, seed }) => random_sample(kind, count, seed),
        }
    }
}

/// `C(steps + n - 1, n - 1)`, saturating.
pub fn simplex_grid_count(n: usize, steps: usize) -> u128 {
    let k = n.saturating_sub(1) as u128;
    let mut count: u128 = 1;
    for i in 1..=k {
        count = match count.checked_mul(steps as u128 + i) {
            Some(c) => c / i,
            None => return u128::MAX,
        };
    }
    count
}

/// All `(k_1/N, …, k_n/N)` with nonnegative integers summing to `N`, in
/// descending lexicographic order of `(k_1, …, k_n)`.
pub fn simplex_grid(n: usize, steps: usize) -> Result<Vec<Portfolio>> {
    simplex_grid_capped(n, steps, DEFAULT_CAP)
}

pub fn simplex_grid_capped(n: usize, steps: usize, cap: u64) -> Result<Vec<Portfolio>> {
    if n == 0 || steps == 0 {
        return Err(Error::InvalidDomain(format!("simplex grid needs n >= 1 and N >= 1, got n={n}, N={steps}")));
    }
    let count = simplex_grid_count(n, steps);
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut counts = vec![0usize; n];
    fill_simplex(&mut counts, 0, steps, steps, &mut out)?;
    Ok(out)
}

fn fill_simplex(
    counts: &mut [usize],
    pos: usize,
    remaining: usize,
    steps: usize,
    out: &mut Vec<Portfolio>,
) -> Result<()> {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        let weights = counts.iter().map(|&k| k as f64 / steps as f64).collect();
        out.push(Portfolio::simplex(weights)?);
        return Ok(());
    }
    for k in (0..=remaining).rev() {
        counts[pos] = k;
        fill_simplex(counts, pos + 1, remaining - k, steps, out)?;
    }
    Ok(())
}

/// Orthonormal basis of `{d : Σ d_i = 0}` from Gram-Schmidt over
/// `e_1 - e_n, …, e_{n-1} - e_n`, in that order.
pub fn hyperplane_basis(n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v[n - 1] = -1.0;
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= dot * c);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    basis
}

fn ball_point(ball: &Arc<Ball>, basis: &[Vec<f64>], coords: &[f64]) -> Result<Portfolio> {
    let mut weights = ball.center().to_vec();
    for (c, b) in coords.iter().zip(basis) {
        weights.iter_mut().zip(b).for_each(|(w, bj)| *w += ball.radius() * c * bj);
    }
    Portfolio::in_ball(weights, ball)
}

/// Lattice points `center + Σ_j (k_j/N)·r·b_j` with integer `k_j ∈ [-N, N]`
/// and `Σ k_j² ≤ N²`, in lexicographic order of `k`. A ball of radius zero
/// yields its center alone.
pub fn ball_grid(ball: &Arc<Ball>, steps: usize) -> Result<Vec<Portfolio>> {
    ball_grid_capped(ball, steps, DEFAULT_CAP)
}

pub fn ball_grid_capped(ball: &Arc<Ball>, steps: usize, cap: u64) -> Result<Vec<Portfolio>> {
    if steps == 0 {
        return Err(Error::InvalidDomain("ball grid needs N >= 1".into()));
    }
    let n = ball.dimension();
    if n == 1 || ball.radius() == 0.0 {
        return Ok(vec![Portfolio::in_ball(ball.center().to_vec(), ball)?]);
    }
    let dims = n - 1;
    let side = 2 * steps as u128 + 1;
    let boxed = (0..dims).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX);
    if boxed > cap as u128 {
        return Err(Error::CapExceeded { count: boxed, cap });
    }
    let basis = hyperplane_basis(n);
    let limit = (steps * steps) as i64;
    let s = steps as i64;
    let mut k = vec![-s; dims];
    let mut out = Vec::new();
    loop {
        if k.iter().map(|&v| v * v).sum::<i64>() <= limit {
            let coords: Vec<f64> = k.iter().map(|&v| v as f64 / steps as f64).collect();
            out.push(ball_point(ball, &basis, &coords)?);
        }
        // odometer increment, last coordinate fastest
        let mut pos = dims;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if k[pos] < s {
                k[pos] += 1;
                k[pos + 1..].iter_mut().for_each(|v| *v = -s);
                break;
            }
        }
    }
}

/// Reproducible random candidates: uniform on the simplex via normalized
/// unit-rate exponentials, uniform in a ball by rejection from its bounding
/// cube in hyperplane coordinates.
pub fn random_sample(kind: &DomainKind, count: usize, seed: u64) -> Result<Vec<Portfolio>> {
    random_sample_with_attempts(kind, count, seed, DEFAULT_REJECTION_ATTEMPTS)
}

pub fn random_sample_with_attempts(
    kind: &DomainKind,
    count: usize,
    seed: u64,
    attempts: usize,
) -> Result<Vec<Portfolio>> {
    if count == 0 {
        return Err(Error::InvalidDomain("sample count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        DomainKind::Simplex { n } => {
            if *n == 0 {
                return Err(Error::InvalidDomain("simplex needs n >= 1".into()));
            }
            (0..count)
                .map(|_| {
                    let draws: Vec<f64> = (0..*n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                    let total: f64 = draws.iter().sum();
                    Portfolio::simplex(draws.into_iter().map(|d| d / total).collect())
                })
                .collect()
        }
        DomainKind::Ball(ball) => {
            let n = ball.dimension();
            if n == 1 || ball.radius() == 0.0 {
                let center = Portfolio::in_ball(ball.center().to_vec(), ball)?;
                return Ok(vec![center; count]);
            }
            let basis = hyperplane_basis(n);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let mut accepted = None;
                for _ in 0..attempts {
                    let coords: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-1.0..=1.0)).collect();
                    if coords.iter().map(|c| c * c).sum::<f64>() <= 1.0 {
                        accepted = Some(coords);
                        break;
                    }
                }
                let coords = accepted.ok_or_else(|| {
                    Error::Sampling(format!("no point accepted in {attempts} attempts for a {n}-asset ball"))
                })?;
                out.push(ball_point(ball, &basis, &coords)?);
            }
            Ok(out)
        }
    }
}
