//! Generate a market, write it as CSV, and run the frontier command on it
//! through the command-line entry point.

use genmark::cli::commands::generate_market;
use genmark::cli::io::write_market_csv;

fn main() -> genmark::Result<()> {
    let dir = std::env::temp_dir().join("genmark-csv-pipeline");
    std::fs::create_dir_all(&dir).map_err(|e| genmark::Error::Config(e.to_string()))?;
    let market_path = dir.join("market.csv");
    let frontier_path = dir.join("frontier.csv");

    let market = generate_market(4, 12, 2024, -0.05, 0.08)?;
    let mut file = std::fs::File::create(&market_path).map_err(|e| genmark::Error::Config(e.to_string()))?;
    write_market_csv(&market, &mut file).map_err(|e| genmark::Error::Config(e.to_string()))?;

    let args = [
        "genmark",
        "frontier",
        "--market",
        market_path.to_str().unwrap(),
        "--preset",
        "markowitz-sd-2",
        "--grid",
        "6",
        "--out",
        frontier_path.to_str().unwrap(),
    ];
    let code = genmark::cli::run(args, &mut std::io::stdout());
    println!("exit code {code}; files in {}", dir.display());
    Ok(())
}
