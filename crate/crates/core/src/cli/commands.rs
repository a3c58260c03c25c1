use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::io::{read_kernel, read_market, write_file, write_market_csv};
use crate::domain::{build_preorder, ObjectiveConfig};
use crate::error::{Error, Result};
use crate::market::{sd_compare, Portfolio, ScenarioMarket};
use crate::preorder::{ChainReport, PreorderInstance, ScoreTable};

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn analyze(market_path: &Path, weights: Vec<f64>, out: &mut dyn Write) -> Result<()> {
    let market = read_market(market_path)?;
    let x = Portfolio::simplex(weights)?;
    let dist = market.return_distribution(&x)?;
    let undefined = |r: Result<f64>| match r {
        Ok(v) => Ok(v.to_string()),
        Err(Error::DegenerateDistribution { .. }) => Ok("undefined (zero variance)".to_string()),
        Err(e) => Err(e),
    };
    let mut s = String::new();
    writeln!(s, "mean: {}", market.expected_return(&x)?).unwrap();
    writeln!(s, "variance: {}", dist.variance()).unwrap();
    writeln!(s, "skewness: {}", undefined(dist.skewness())?).unwrap();
    writeln!(s, "excess_kurtosis: {}", undefined(dist.excess_kurtosis())?).unwrap();
    writeln!(s, "support\tmass").unwrap();
    for (v, m) in dist.iter() {
        writeln!(s, "{v}\t{m}").unwrap();
    }
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn portfolios(weights: &[Vec<f64>]) -> Result<Vec<Portfolio>> {
    weights.iter().cloned().map(Portfolio::simplex).collect()
}

fn bind(objectives: &ObjectiveConfig, market: ScenarioMarket, points: &[Portfolio]) -> Result<PreorderInstance> {
    build_preorder(objectives, Arc::new(market), Some(points))
}

pub fn relate(
    market_path: &Path,
    objectives: &ObjectiveConfig,
    weights: &[Vec<f64>],
    out: &mut dyn Write,
) -> Result<()> {
    if weights.len() != 2 {
        return Err(Error::Config(format!("relate needs exactly two --weights, got {}", weights.len())));
    }
    let points = portfolios(weights)?;
    let preorder = bind(objectives, read_market(market_path)?, &points)?;
    let verdict = preorder.relate(&points[0], &points[1])?;
    let labels = preorder.labels();
    let mut s = String::new();
    writeln!(s, "verdict: {}", verdict.relation.as_str()).unwrap();
    if let Some(k) = verdict.witness {
        writeln!(s, "witness: {} ({})", k, labels[k]).unwrap();
    }
    writeln!(s, "x: {}", join(&preorder.evaluate(&points[0])?, ",")).unwrap();
    writeln!(s, "y: {}", join(&preorder.evaluate(&points[1])?, ",")).unwrap();
    out.write_all(s.as_bytes()).map_err(io_err)
}

fn format_report(report: &ChainReport, labels: &[String], upper_bound: usize) -> String {
    let mut s = String::new();
    let label = |col: Option<usize>| col.map_or("constant".to_string(), |c| labels[c].clone());
    writeln!(s, "chain: {}", join(&report.chain, " ")).unwrap();
    for (p, pair) in report.pairs.iter().enumerate() {
        writeln!(s, "pair {p}: u={} v={}", label(pair.u_objective), label(pair.v_objective)).unwrap();
        writeln!(s, "  M: {}", pair.sup_u).unwrap();
        writeln!(s, "  m: {}", pair.inf_v).unwrap();
        writeln!(s, "  C: {}", join(&pair.top_u, " ")).unwrap();
        writeln!(s, "  C-: {}", join(&pair.below_top_u, " ")).unwrap();
        writeln!(s, "  c: {}", join(&pair.bottom_v, " ")).unwrap();
        writeln!(s, "  c+: {}", join(&pair.above_bottom_v, " ")).unwrap();
        writeln!(s, "  lemma_i: {}", report.lemma_i[p]).unwrap();
    }
    writeln!(s, "lemma_ii: {}", report.lemma_ii_holds()).unwrap();
    writeln!(s, "corollary: {}", report.corollary_holds()).unwrap();
    writeln!(s, "nesting_order: {}", join(&report.nesting_order, " ")).unwrap();
    writeln!(s, "upper_bound: {upper_bound}").unwrap();
    s
}

pub fn chain(
    market_path: &Path,
    objectives: &ObjectiveConfig,
    weights: &[Vec<f64>],
    out: &mut dyn Write,
) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Config("chain needs at least one --weights".into()));
    }
    let points = portfolios(weights)?;
    let preorder = bind(objectives, read_market(market_path)?, &points)?;
    let table = preorder.score(&points)?;
    let indices: Vec<usize> = (0..points.len()).collect();
    let report = table.chain_report(&indices)?;
    let upper_bound = table.chain_upper_bound(&indices)?;
    out.write_all(format_report(&report, &preorder.labels(), upper_bound).as_bytes()).map_err(io_err)
}

pub fn sdom(
    market_path: &Path,
    weights: &[Vec<f64>],
    order: u32,
    samples_per_interval: usize,
    out: &mut dyn Write,
) -> Result<()> {
    if weights.len() != 2 {
        return Err(Error::Config(format!("sdom needs exactly two --weights, got {}", weights.len())));
    }
    let market = read_market(market_path)?;
    let points = portfolios(weights)?;
    let x = market.return_distribution(&points[0])?;
    let y = market.return_distribution(&points[1])?;
    let verdict = sd_compare(&x, &y, order, samples_per_interval)?;
    let mut s = String::new();
    writeln!(s, "order: {order}").unwrap();
    writeln!(s, "verdict: {}", verdict.as_str()).unwrap();
    writeln!(s, "mean_x: {}", x.mean()).unwrap();
    writeln!(s, "mean_y: {}", y.mean()).unwrap();
    out.write_all(s.as_bytes()).map_err(io_err)
}

pub fn kernel(matrix_path: &Path, epsilon: f64, out: &mut dyn Write) -> Result<()> {
    let k = read_kernel(matrix_path)?;
    let certification = k.maximal_certify(epsilon)?;
    let mut s = String::new();
    writeln!(s, "size: {}", k.size()).unwrap();
    writeln!(s, "maximal: {}", join(&certification.maximal_indices, " ")).unwrap();
    for element in &certification.elements {
        for c in &element.certificates {
            writeln!(s, "certificate m={} p={} max={} min={}", element.element, c.p, c.attained_max, c.attained_min)
                .unwrap();
        }
    }
    writeln!(s, "certified: true").unwrap();
    out.write_all(s.as_bytes()).map_err(io_err)
}

/// A synthetic market with equally likely scenarios and returns drawn
/// uniformly from `[low, high)`.
pub fn generate_market(assets: usize, scenarios: usize, seed: u64, low: f64, high: f64) -> Result<ScenarioMarket> {
    if !low.is_finite() || !high.is_finite() || low >= high {
        return Err(Error::Config(format!("return range [{low}, {high}) is empty")));
    }
    if assets == 0 || scenarios == 0 {
        return Err(Error::Config("need at least one asset and one scenario".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let returns = (0..assets).map(|_| (0..scenarios).map(|_| rng.random_range(low..high)).collect()).collect();
    ScenarioMarket::new(vec![1.0 / scenarios as f64; scenarios], returns)
}

pub fn gen(
    assets: usize,
    scenarios: usize,
    seed: u64,
    low: f64,
    high: f64,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let market = generate_market(assets, scenarios, seed, low, high)?;
    let mut buf = Vec::new();
    write_market_csv(&market, &mut buf).map_err(io_err)?;
    match target {
        Some(path) => std::fs::write(path, &buf).map_err(|e| Error::io(path.display().to_string(), e)),
        None => out.write_all(&buf).map_err(io_err),
    }
}

/// Rendered frontier files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierOutput {
    pub csv: String,
    pub plot: String,
    pub candidates: usize,
    pub maximal: usize,
}

fn resolve_column(spec: Option<&str>, default: usize, labels: &[String]) -> Result<usize> {
    let Some(spec) = spec else { return Ok(default) };
    if let Ok(i) = spec.parse::<usize>() {
        if i < labels.len() {
            return Ok(i);
        }
        return Err(Error::Config(format!("plot column {i} out of range for {} objectives", labels.len())));
    }
    labels.iter().position(|l| l == spec).ok_or_else(|| Error::Config(format!("no objective labelled `{spec}`")))
}

fn render_frontier(
    candidates: &[Portfolio],
    labels: &[String],
    table: &ScoreTable,
    config: &RunConfig,
) -> Result<FrontierOutput> {
    let result = table.maximal_set()?;
    let n = candidates.first().map_or(0, Portfolio::len);
    let mut csv = String::new();
    let header: Vec<String> = std::iter::once("index".to_string())
        .chain((1..=n).map(|i| format!("w_{i}")))
        .chain(labels.iter().cloned())
        .chain(["maximal".to_string(), "dominator".to_string()])
        .collect();
    writeln!(csv, "{}", header.join(",")).unwrap();
    for (i, x) in candidates.iter().enumerate() {
        let dominator = result.dominators[i].map_or(String::new(), |d| d.to_string());
        let flag = if result.is_maximal(i) { 1 } else { 0 };
        writeln!(csv, "{i},{},{},{flag},{dominator}", join(x.weights(), ","), join(table.row(i), ",")).unwrap();
    }

    let px = resolve_column(config.plot_x.as_deref(), 0, labels)?;
    let py = resolve_column(config.plot_y.as_deref(), 1.min(labels.len() - 1), labels)?;
    let mut plot = String::new();
    writeln!(plot, "{}\t{}\tmaximal", labels[px], labels[py]).unwrap();
    for i in 0..candidates.len() {
        let flag = if result.is_maximal(i) { 1 } else { 0 };
        writeln!(plot, "{}\t{}\t{flag}", table.row(i)[px], table.row(i)[py]).unwrap();
    }
    Ok(FrontierOutput { csv, plot, candidates: candidates.len(), maximal: result.maximal_indices.len() })
}

/// Computes the frontier files for a run configuration without writing
/// them. Uses a dedicated pool when `config.threads` is set.
pub fn compute_frontier(config: &RunConfig) -> Result<FrontierOutput> {
    let work = || -> Result<FrontierOutput> {
        let market_path = config.market.as_ref().ok_or_else(|| Error::Config("no market given".into()))?;
        let market = Arc::new(read_market(market_path)?);
        let candidates = config.domain_spec(market.asset_count())?.candidates()?;
        let preorder = build_preorder(&config.objective_config()?, market, Some(&candidates))?;
        let table = preorder.score(&candidates)?;
        render_frontier(&candidates, &preorder.labels(), &table, config)
    };
    match config.threads {
        None => work(),
        Some(0) => Err(Error::Config("threads must be >= 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {t} threads: {e}")))?
            .install(work),
    }
}

pub fn frontier(config: &RunConfig, out: &mut dyn Write) -> Result<FrontierOutput> {
    let output = compute_frontier(config)?;
    let mut s = String::new();
    writeln!(s, "candidates: {}", output.candidates).unwrap();
    writeln!(s, "maximal: {}", output.maximal).unwrap();
    match &config.frontier_out {
        Some(path) => {
            write_file(path, &output.csv)?;
            writeln!(s, "frontier: {}", path.display()).unwrap();
        }
        None => s.push_str(&output.csv),
    }
    if let Some(path) = &config.plot_out {
        write_file(path, &output.plot)?;
        writeln!(s, "plot: {}", path.display()).unwrap();
    }
    out.write_all(s.as_bytes()).map_err(io_err)?;
    Ok(output)
}
