//! Frontier over a ball in the budget hyperplane, which allows bounded short
//! positions, compared with the long-only simplex.

use std::sync::Arc;

use genmark::domain::{ball_grid, build_preorder, simplex_grid, ObjectiveConfig, Preset};
use genmark::market::{Ball, ScenarioMarket};

fn main() -> genmark::Result<()> {
    let market = Arc::new(ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0], vec![0.0, 2.0]])?);
    let preorder = build_preorder(&ObjectiveConfig::preset(Preset::Markowitz), Arc::clone(&market), None)?;

    let ball = Arc::new(Ball::new(vec![1.0 / 3.0; 3], 1.0)?);
    println!("ball contains the simplex: {}", ball.contains_simplex());
    for (name, candidates) in [("simplex", simplex_grid(3, 10)?), ("ball", ball_grid(&ball, 10)?)] {
        let frontier = preorder.maximal_set(&candidates)?;
        let best = frontier
            .maximal_indices
            .iter()
            .map(|&i| market.expected_return(&candidates[i]).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        println!(
            "{name:>8}: {} candidates, {} maximal, best mean {best:.3}",
            candidates.len(),
            frontier.maximal_indices.len()
        );
    }
    Ok(())
}
