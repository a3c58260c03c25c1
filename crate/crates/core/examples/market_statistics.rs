//! Return distribution and moments of a two-asset portfolio.

use genmark::market::{Portfolio, ScenarioMarket};

fn main() -> genmark::Result<()> {
    let market = ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0]])?;
    for weights in [vec![0.5, 0.5], vec![1.0, 0.0], vec![0.0, 1.0]] {
        let x = Portfolio::simplex(weights)?;
        let dist = market.return_distribution(&x)?;
        println!("x = {:?}", x.weights());
        println!("  outcomes  {:?} with masses {:?}", dist.support(), dist.masses());
        println!("  mean      {}", market.expected_return(&x)?);
        println!("  variance  {}", market.variance(&x)?);
        match (market.skewness(&x), market.excess_kurtosis(&x)) {
            (Ok(s), Ok(k)) => println!("  skewness  {s}\n  kurtosis  {k} (excess)"),
            _ => println!("  shape statistics undefined: zero variance"),
        }
        println!("  D2(3)     {}", dist.sd_integral(2, 3.0)?);
    }
    Ok(())
}
