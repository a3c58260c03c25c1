//! How adding skewness and kurtosis objectives grows the maximal set.

use std::sync::Arc;

use genmark::domain::{build_preorder, simplex_grid, ObjectiveConfig, Preset};
use genmark::market::ScenarioMarket;

fn main() -> genmark::Result<()> {
    let market = Arc::new(ScenarioMarket::new(
        vec![0.2, 0.3, 0.3, 0.2],
        vec![vec![0.02, 0.01, 0.03, 0.02], vec![-0.10, 0.05, 0.08, 0.20], vec![0.15, -0.05, 0.02, 0.04]],
    )?);
    let candidates = simplex_grid(3, 12)?;
    for preset in Preset::ALL_FIXED {
        let preorder = build_preorder(&ObjectiveConfig::preset(preset), Arc::clone(&market), None)?;
        let frontier = preorder.maximal_set(&candidates)?;
        println!(
            "{preset:>10}: {:>3} maximal of {} ({})",
            frontier.maximal_indices.len(),
            candidates.len(),
            preorder.labels().join(", ")
        );
    }
    Ok(())
}
