//! Extremal sets of a chain and the nesting properties they satisfy.

use std::sync::Arc;

use genmark::domain::{build_preorder, ObjectiveConfig, Preset};
use genmark::market::{Portfolio, ScenarioMarket};

fn main() -> genmark::Result<()> {
    let market = ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0], vec![0.0, 2.0]])?;
    let preorder = build_preorder(&ObjectiveConfig::preset(Preset::Skew), Arc::new(market), None)?;
    let chain: Vec<Portfolio> = [[0.0, 0.0, 1.0], [0.5, 0.0, 0.5], [1.0, 0.0, 0.0]]
        .iter()
        .map(|w| Portfolio::simplex(w.to_vec()))
        .collect::<Result<_, _>>()?;

    println!("is a chain: {}", preorder.verify_chain(&chain)?);
    let report = preorder.chain_report(&chain)?;
    for (p, pair) in report.pairs.iter().enumerate() {
        println!("pair {p}: C = {:?}, c = {:?}, c ∩ C = {:?}", pair.top_u, pair.bottom_v, pair.extremal());
    }
    println!("nesting order {:?}", report.nesting_order);
    println!(
        "lemma (i) {}, lemma (ii) {}, corollary {}",
        report.lemma_i_holds(),
        report.lemma_ii_holds(),
        report.corollary_holds()
    );
    println!("upper bound {:?}", preorder.chain_upper_bound(&chain)?.weights());
    Ok(())
}
