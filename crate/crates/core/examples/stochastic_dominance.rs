//! Stochastic dominance of several orders between discrete distributions.

use genmark::market::{sd_compare, DiscreteDistribution, DEFAULT_SAMPLES_PER_INTERVAL};

fn main() -> genmark::Result<()> {
    let safe = DiscreteDistribution::point(1.0);
    let risky = DiscreteDistribution::from_outcomes(&[0.5, 2.5], &[0.5, 0.5])?;
    let shifted = DiscreteDistribution::from_outcomes(&[0.7, 2.6], &[0.5, 0.5])?;
    let spread = DiscreteDistribution::from_outcomes(&[0.0, 1.5, 3.0], &[0.25, 0.5, 0.25])?;

    let pairs = [
        ("risky", &risky, "shifted", &shifted),
        ("safe", &safe, "risky", &risky),
        ("risky", &risky, "spread", &spread),
    ];
    for (nx, x, ny, y) in pairs {
        for order in 1..=3 {
            let verdict = sd_compare(x, y, order, DEFAULT_SAMPLES_PER_INTERVAL)?;
            println!("{nx} vs {ny}, order {order}: {}", verdict.as_str());
        }
    }

    println!("\nD^(l)(t) for the risky distribution:");
    for t in [0.0, 1.0, 2.0, 3.0] {
        let row: Vec<String> = (1..=4).map(|l| format!("{:.4}", risky.sd_integral(l, t).unwrap())).collect();
        println!("  t = {t}: {}", row.join("  "));
    }
    Ok(())
}
