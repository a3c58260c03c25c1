//! Maximal portfolios of the mean-variance preorder on a simplex grid, with
//! the ascent from an inefficient portfolio.

use std::sync::Arc;

use genmark::domain::{build_preorder, simplex_grid, ObjectiveConfig, Preset};
use genmark::market::{Portfolio, ScenarioMarket};

fn main() -> genmark::Result<()> {
    let market = ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0], vec![0.0, 2.0]])?;
    let preorder = build_preorder(&ObjectiveConfig::preset(Preset::Markowitz), Arc::new(market), None)?;
    let candidates = simplex_grid(3, 10)?;
    let frontier = preorder.maximal_set(&candidates)?;

    println!("{} of {} grid portfolios are maximal", frontier.maximal_indices.len(), candidates.len());
    for &i in &frontier.maximal_indices {
        let scores = preorder.evaluate(&candidates[i])?;
        println!("  {:?}  mean {:.3}  variance {:.3}", candidates[i].weights(), scores[0], scores[1]);
    }

    let start = Portfolio::simplex(vec![0.0, 0.0, 1.0])?;
    let ascent = preorder.ascend_to_maximal(&start, &candidates)?;
    println!("ascent from {:?}:", start.weights());
    for step in &ascent.path {
        println!("  {:?}", step.weights());
    }
    Ok(())
}
