//! Acceptance suite: one `[PASS]` or `[FAIL]` line per criterion, nonzero
//! exit if any criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use genmark::cli::commands::compute_frontier;
use genmark::cli::config::{DomainChoice, RunConfig};
use genmark::cli::io::write_market_csv;
use genmark::domain::{build_preorder, random_sample, simplex_grid, DomainKind, ObjectiveConfig, Preset};
use genmark::kernel::KernelInstance;
use genmark::market::{sd_compare, DiscreteDistribution, Portfolio, ScenarioMarket};
use genmark::preorder::{PreorderInstance, Relation, ScoreTable};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, pass: bool, detail: String) -> bool {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {detail}");
    pass
}

fn m0() -> ScenarioMarket {
    ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0]]).unwrap()
}

fn m1() -> ScenarioMarket {
    ScenarioMarket::new(vec![0.5, 0.5], vec![vec![1.0, 1.0], vec![0.0, 4.0], vec![0.0, 2.0]]).unwrap()
}

fn markowitz(market: ScenarioMarket) -> PreorderInstance {
    build_preorder(&ObjectiveConfig::preset(Preset::Markowitz), Arc::new(market), None).unwrap()
}

fn m1_frontier_indices(market: ScenarioMarket) -> BTreeSet<usize> {
    let candidates = simplex_grid(3, 20).unwrap();
    markowitz(market).maximal_set(&candidates).unwrap().maximal_indices.into_iter().collect()
}

fn random_market(rng: &mut ChaCha8Rng, n: usize, m: usize) -> ScenarioMarket {
    let weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let probabilities = weights.iter().map(|w| w / total).collect();
    let returns = (0..n).map(|_| (0..m).map(|_| rng.random_range(-0.3..0.5)).collect()).collect();
    ScenarioMarket::new(probabilities, returns).unwrap()
}

fn random_candidates(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<Portfolio> {
    let count = rng.random_range(1..=max);
    let grid_steps = rng.random_range(1..=4);
    let mut candidates: Vec<Portfolio> = simplex_grid(n, grid_steps).unwrap();
    candidates.shuffle(rng);
    candidates.truncate(count / 2);
    let rest = count - candidates.len();
    if rest > 0 {
        candidates.extend(random_sample(&DomainKind::Simplex { n }, rest, rng.random()).unwrap());
    }
    candidates
}

fn random_preset(rng: &mut ChaCha8Rng) -> Preset {
    match rng.random_range(0..9) {
        i @ 0..5 => Preset::ALL_FIXED[i],
        5 => Preset::Sd(1),
        6 => Preset::Sd(2),
        7 => Preset::Sd(3),
        _ => Preset::MarkowitzSd(2),
    }
}

/// `x R y` straight from the definition.
fn weakly_below(row_x: &[f64], row_y: &[f64], u_len: usize, eps: f64) -> bool {
    row_x.iter().zip(row_y).enumerate().all(|(k, (&a, &b))| if k < u_len { a <= b + eps } else { a >= b - eps })
}

fn oracle_maximal(table: &ScoreTable) -> Vec<usize> {
    let rows = table.rows();
    let (u, eps) = (table.u_len(), table.epsilon());
    (0..rows.len())
        .filter(|&x| {
            !(0..rows.len())
                .any(|y| weakly_below(&rows[x], &rows[y], u, eps) && !weakly_below(&rows[y], &rows[x], u, eps))
        })
        .collect()
}

fn criterion_01_ascent_reaches_maximal() -> bool {
    let start = Instant::now();
    let preorder = markowitz(m1());
    let candidates = simplex_grid(3, 20).unwrap();
    let mut good = 0;
    for x in &candidates {
        let ascent = preorder.ascend_to_maximal(x, &candidates).unwrap();
        let m = &ascent.maximal;
        let relation = preorder.relate(x, m).unwrap().relation;
        let same = m.weights() == x.weights();
        let related = same || matches!(relation, Relation::Equivalent | Relation::XBelowYStrict);
        if preorder.is_maximal(m, &candidates).unwrap() && related {
            good += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        candidates.len() == 231 && good == 231 && elapsed < Duration::from_secs(5),
        format!("{good}/{} ascents end at a maximal dominator in {elapsed:.2?}", candidates.len()),
    )
}

fn criterion_02_efficiency_equals_maximality() -> bool {
    let preorder = markowitz(m1());
    let candidates = simplex_grid(3, 20).unwrap();
    let mut mismatches = 0;
    let mut efficient = 0;
    for x in &candidates {
        let e = preorder.is_markowitz_efficient(x, &candidates).unwrap();
        let m = preorder.is_maximal(x, &candidates).unwrap();
        efficient += e as usize;
        mismatches += (e != m) as usize;
    }
    report(2, mismatches == 0, format!("{efficient} efficient portfolios, {mismatches} mismatches with maximality"))
}

fn criterion_03_maximal_set_matches_oracle() -> bool {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut agree = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=6);
        let market = Arc::new(random_market(&mut rng, n, m));
        let candidates = random_candidates(&mut rng, n, 100);
        let config = ObjectiveConfig::preset(random_preset(&mut rng));
        let preorder = build_preorder(&config, market, Some(&candidates)).unwrap();
        let table = preorder.score(&candidates).unwrap();
        let fast = preorder.maximal_set(&candidates).unwrap().maximal_indices;
        if fast == oracle_maximal(&table) {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        agree == 200 && elapsed < Duration::from_secs(60),
        format!("{agree}/200 instances agree with the pairwise oracle in {elapsed:.2?}"),
    )
}

fn criterion_04_chain_lemmas() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut holds = 0;
    let mut lengths = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(1..=6);
        let market = Arc::new(random_market(&mut rng, n, m));
        let candidates = random_candidates(&mut rng, n, 40);
        let config = ObjectiveConfig::preset(random_preset(&mut rng));
        let preorder = build_preorder(&config, market, Some(&candidates)).unwrap();
        let table = preorder.score(&candidates).unwrap();

        let mut order: Vec<usize> = (0..table.len()).collect();
        order.shuffle(&mut rng);
        let mut chain = vec![order[0]];
        for &j in &order[1..] {
            if chain.iter().all(|&i| table.relate(i, j).relation.is_comparable()) {
                chain.push(j);
            }
        }
        lengths += chain.len();
        let report = table.chain_report(&chain).unwrap();
        if report.lemma_i_holds() && report.lemma_ii_holds() && report.corollary_holds() {
            holds += 1;
        }
    }
    report(
        4,
        holds == 1000,
        format!("{holds}/1000 chains satisfy all nesting properties (mean length {:.1})", lengths as f64 / 1000.0),
    )
}

fn random_probabilities(rng: &mut ChaCha8Rng, atoms: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

/// `P(s ≤ t)` and `P(s < t)` by direct summation.
fn cdf_limits(support: &[f64], masses: &[f64], t: f64) -> (f64, f64) {
    let mut right = 0.0;
    let mut left = 0.0;
    for (&s, &m) in support.iter().zip(masses) {
        if s <= t {
            right += m;
        }
        if s < t {
            left += m;
        }
    }
    (right, left)
}

/// Iterated integrals of the CDF by the trapezoid rule on `grid`, with the
/// step function integrated through its one-sided limits on each cell.
fn trapezoid_curves(support: &[f64], masses: &[f64], grid: &[f64]) -> [Vec<f64>; 3] {
    let mut d2 = vec![0.0; grid.len()];
    let mut d3 = vec![0.0; grid.len()];
    let mut d4 = vec![0.0; grid.len()];
    for k in 1..grid.len() {
        let (a, b) = (grid[k - 1], grid[k]);
        let h = b - a;
        let (f_a_right, _) = cdf_limits(support, masses, a);
        let (_, f_b_left) = cdf_limits(support, masses, b);
        d2[k] = d2[k - 1] + 0.5 * h * (f_a_right + f_b_left);
        d3[k] = d3[k - 1] + 0.5 * h * (d2[k - 1] + d2[k]);
        d4[k] = d4[k - 1] + 0.5 * h * (d3[k - 1] + d3[k]);
    }
    [d2, d3, d4]
}

fn criterion_05_sd_closed_form_vs_recursion() -> bool {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fractions = [0.25, 0.5, 0.75, 1.0, 1.3, 1.6];
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let atoms = rng.random_range(2..=8);
        let values: Vec<f64> = (0..atoms).map(|_| rng.random_range(-1.0..2.0)).collect();
        let probabilities = random_probabilities(&mut rng, atoms);
        let dist = DiscreteDistribution::from_outcomes(&values, &probabilities).unwrap();
        let (lo, hi) = (dist.min(), dist.max());
        let span = hi - lo;
        let step = 1e-4 * span;
        let end = lo + 1.6 * span;
        let cells = ((end - lo) / step).round() as usize;
        let mut grid: Vec<f64> = (0..=cells).map(|k| lo + k as f64 * step).collect();
        grid.extend(dist.support());
        grid.extend(fractions.iter().map(|f| lo + f * span));
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let curves = trapezoid_curves(dist.support(), dist.masses(), &grid);
        for f in fractions {
            let t = lo + f * span;
            let k = (0..grid.len()).min_by(|&a, &b| (grid[a] - t).abs().total_cmp(&(grid[b] - t).abs())).unwrap();
            for (order, curve) in (2..=4).zip(&curves) {
                let closed = dist.sd_integral(order, grid[k]).unwrap();
                let rel = (closed - curve[k]).abs() / closed.abs().max(1e-300);
                worst = worst.max(rel);
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        5,
        worst <= 1e-6 && elapsed < Duration::from_secs(30),
        format!("worst relative error {worst:.2e} over 100 distributions, orders 2..4, in {elapsed:.2?}"),
    )
}

fn criterion_06_fsd_implies_mean_order() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut cases = 0;
    let mut consistent = 0;
    let mut draws = 0;
    while cases < 500 {
        draws += 1;
        let atoms = rng.random_range(1..=6);
        let values: Vec<f64> = (0..atoms).map(|_| rng.random_range(-1.0..1.0)).collect();
        let probabilities = random_probabilities(&mut rng, atoms);
        let other: Vec<f64> = if rng.random_bool(0.5) {
            values.iter().map(|v| v + rng.random_range(0.0..0.5) * rng.random_range(0..2) as f64).collect()
        } else {
            (0..atoms).map(|_| rng.random_range(-1.0..1.0)).collect()
        };
        let x = DiscreteDistribution::from_outcomes(&values, &probabilities).unwrap();
        let y = DiscreteDistribution::from_outcomes(&other, &probabilities).unwrap();
        let verdict = sd_compare(&x, &y, 1, 16).unwrap();
        let (winner, loser) = if verdict.y_dominates() {
            (&y, &x)
        } else if verdict.x_dominates() {
            (&x, &y)
        } else {
            continue;
        };
        cases += 1;
        if winner.mean() >= loser.mean() - 1e-9 {
            consistent += 1;
        }
    }
    report(
        6,
        consistent == 500,
        format!("{consistent}/500 dominating distributions have the larger mean ({draws} pairs drawn)"),
    )
}

fn criterion_07_moment_spot_values() -> bool {
    let market = m0();
    let x = Portfolio::simplex(vec![0.5, 0.5]).unwrap();
    let dist = market.return_distribution(&x).unwrap();
    let checks = [
        ("mean", market.expected_return(&x).unwrap(), 1.5),
        ("variance", market.variance(&x).unwrap(), 1.0),
        ("skewness", market.skewness(&x).unwrap(), 0.0),
        ("excess kurtosis", market.excess_kurtosis(&x).unwrap(), -2.0),
        ("D2(3)", dist.sd_integral(2, 3.0).unwrap(), 1.5),
    ];
    let failures: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).abs() > 1e-12)
        .map(|(name, got, want)| format!("{name}={got} (want {want})"))
        .collect();
    report(
        7,
        failures.is_empty(),
        if failures.is_empty() { "all five values within 1e-12".into() } else { failures.join(", ") },
    )
}

fn criterion_08_kernel_certification() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut certified = 0;
    let mut elements = 0;
    for _ in 0..100 {
        let rows: Vec<Vec<f64>> = (0..5).map(|_| (0..5).map(|_| rng.random_range(0..4) as f64).collect()).collect();
        let kernel = KernelInstance::new(rows).unwrap();
        if let Ok(c) = kernel.maximal_certify(0.0) {
            if !c.maximal_indices.is_empty() && c.elements.iter().all(|e| e.certificates.len() == 5) {
                certified += 1;
                elements += c.maximal_indices.len();
            }
        }
    }
    let worked = KernelInstance::new(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap().maximal_certify(0.0).unwrap();
    let worked_ok = worked.maximal_indices == vec![0];
    report(
        8,
        certified == 100 && worked_ok,
        format!(
            "{certified}/100 random 5x5 kernels certified ({elements} maximal elements); 2x2 maximal set {:?}",
            worked.maximal_indices
        ),
    )
}

fn criterion_one_config(dir: &std::path::Path, threads: usize) -> RunConfig {
    RunConfig {
        market: Some(dir.join("m1.csv")),
        domain: Some(DomainChoice::Simplex),
        grid: Some(20),
        preset: Some("markowitz".into()),
        threads: Some(threads),
        ..Default::default()
    }
}

fn criterion_09_frontier_is_deterministic() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = Vec::new();
    write_market_csv(&m1(), &mut csv).unwrap();
    std::fs::write(dir.path().join("m1.csv"), csv).unwrap();

    let runs: Vec<_> =
        [1, 1, 4, 4].iter().map(|&t| compute_frontier(&criterion_one_config(dir.path(), t)).unwrap()).collect();
    let identical = runs.windows(2).all(|w| w[0] == w[1]);

    let market = dir.path().join("m1.csv").display().to_string();
    let stdout: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|t| {
            let mut out = Vec::new();
            let args = ["genmark", "frontier", "--market", &market, "--grid", "20", "--threads", t];
            assert_eq!(genmark::cli::run(args, &mut out), 0);
            out
        })
        .collect();
    let cli_identical = stdout[0] == stdout[1];
    report(
        9,
        identical && cli_identical && runs[0].candidates == 231,
        format!("frontier output identical across 2 runs x threads {{1, 4}}: library {identical}, cli {cli_identical}"),
    )
}

fn criterion_10_affine_invariance() -> bool {
    let base = m1_frontier_indices(m1());
    let moved = m1_frontier_indices(m1().affine(3.0, 0.1).unwrap());
    report(
        10,
        base == moved && !base.is_empty(),
        format!("{} maximal indices before and after r -> 3r + 0.1, equal: {}", base.len(), base == moved),
    )
}

fn main() {
    let criteria: [(u32, fn() -> bool); 10] = [
        (1, criterion_01_ascent_reaches_maximal),
        (2, criterion_02_efficiency_equals_maximality),
        (3, criterion_03_maximal_set_matches_oracle),
        (4, criterion_04_chain_lemmas),
        (5, criterion_05_sd_closed_form_vs_recursion),
        (6, criterion_06_fsd_implies_mean_order),
        (7, criterion_07_moment_spot_values),
        (8, criterion_08_kernel_certification),
        (9, criterion_09_frontier_is_deterministic),
        (10, criterion_10_affine_invariance),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let pass = std::panic::catch_unwind(check).unwrap_or_else(|_| {
            println!("[FAIL] criterion {n}: panicked");
            false
        });
        failed += !pass as usize;
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
