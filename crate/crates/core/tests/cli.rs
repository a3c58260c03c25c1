use std::path::{Path, PathBuf};
use std::process::Command;

use genmark::cli::io::read_market;
use genmark::domain::{build_preorder, simplex_grid, ObjectiveConfig, Preset};
use genmark::market::Portfolio;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn arg(p: &Path) -> String {
    p.display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = genmark::cli::run(std::iter::once("genmark").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_genmark")).args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn frontier_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, plot) = (dir.path().join("f.csv"), dir.path().join("p.tsv"));
    let (code, stdout) = run(&[
        "frontier",
        "--market",
        &arg(&golden("m1.csv")),
        "--grid",
        "1",
        "--out",
        &arg(&csv),
        "--plot",
        &arg(&plot),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("candidates: 3\nmaximal: 2\n"));
    assert_eq!(
        std::fs::read_to_string(csv).unwrap(),
        std::fs::read_to_string(golden("frontier_m1_grid1.csv")).unwrap()
    );
    assert_eq!(std::fs::read_to_string(plot).unwrap(), std::fs::read_to_string(golden("plot_m1_grid1.tsv")).unwrap());
}

#[test]
fn analyze_and_kernel_match_golden_files() {
    let (code, out) = run(&["analyze", "--market", &arg(&golden("m0.csv")), "--weights", "0.5,0.5"]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden("analyze_m0_half.txt")).unwrap());

    let (code, out) = run(&["kernel", "--matrix", &arg(&golden("kernel_2x2.csv"))]);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden("kernel_2x2.txt")).unwrap());
}

#[test]
fn degenerate_statistics_are_reported_not_fatal() {
    let (code, out) = run(&["analyze", "--market", &arg(&golden("m0.csv")), "--weights", "1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("skewness: undefined (zero variance)"));
}

#[test]
fn relate_chain_and_sdom_verdicts() {
    let m0 = arg(&golden("m0.csv"));
    let (_, out) = run(&["relate", "--market", &m0, "--weights", "1,0", "--weights", "0,1"]);
    assert!(out.starts_with("verdict: incomparable\n"));
    let (_, out) = run(&["relate", "--market", &m0, "--weights", "0,1", "--weights", "0,1"]);
    assert!(out.starts_with("verdict: equivalent\n"));

    let (code, out) = run(&["chain", "--market", &arg(&golden("m1.csv")), "--weights", "0,0,1", "--weights", "1,0,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("corollary: true") && out.contains("upper_bound: 1"));

    let (_, out) = run(&["sdom", "--market", &m0, "--weights", "1,0", "--weights", "0.5,0.5", "--ell", "2"]);
    assert!(out.contains("verdict: incomparable"));
}

#[test]
fn generated_markets_are_seeded_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let (code, _) = run(&["gen", "--n", "3", "--scenarios", "5", "--seed", "11", "--out", &arg(path)]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let market = read_market(&a).unwrap();
    assert_eq!((market.asset_count(), market.scenario_count()), (3, 5));
    assert!(market.returns().iter().flatten().all(|r| (-0.1..0.1).contains(r)));
}

#[test]
fn frontier_csv_flags_agree_with_maximality() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let m1 = golden("m1.csv");
    let (code, _) = run(&["frontier", "--market", &arg(&m1), "--grid", "6", "--preset", "skew", "--out", &arg(&csv)]);
    assert_eq!(code, 0);

    let market = std::sync::Arc::new(read_market(&m1).unwrap());
    let candidates = simplex_grid(3, 6).unwrap();
    let preorder = build_preorder(&ObjectiveConfig::preset(Preset::Skew), market, None).unwrap();
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let mut rows = 0;
    for record in reader.records() {
        let record = record.unwrap();
        let weights: Vec<f64> = (1..=3).map(|i| record[i].parse().unwrap()).collect();
        let flag = &record[record.len() - 2] == "1";
        let x = Portfolio::simplex(weights).unwrap();
        assert_eq!(flag, preorder.is_maximal(&x, &candidates).unwrap());
        rows += 1;
    }
    assert_eq!(rows, candidates.len());
}

#[test]
fn config_files_drive_frontier_runs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(golden("m1.csv"), dir.path().join("m1.csv")).unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(
        &config,
        "# ball run\nmarket = m1.csv\ndomain.kind = ball\ndomain.N = 2\ndomain.radius = 0.3\npreset = markowitz\n",
    )
    .unwrap();
    let (code, out) = run(&["frontier", "--config", &arg(&config)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("index,w_1,w_2,w_3,mean,variance,maximal,dominator"));
}

#[test]
fn exit_codes_follow_error_classes() {
    let m0 = arg(&golden("m0.csv"));
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["analyze", "--market", &m0, "--weights", "0.5,0.5"]), 0);
    assert_eq!(exit_code(&["analyze", "--market", "/nonexistent/m.csv", "--weights", "1"]), 4);
    assert_eq!(exit_code(&["analyze", "--market", &m0, "--weights", "1,1"]), 2);
    assert_eq!(exit_code(&["chain", "--market", &m0, "--weights", "1,0", "--weights", "0,1"]), 2);
    assert_eq!(exit_code(&["frontier", "--market", &arg(&golden("m1.csv")), "--grid", "10000"]), 3);
    assert_eq!(exit_code(&["bogus"]), 2);
}

#[test]
fn worked_cli_examples() {
    let m1 = arg(&golden("m1.csv"));
    let (_, out) = run(&["relate", "--market", &m1, "--weights", "0,0,1", "--weights", "1,0,0"]);
    assert!(out.starts_with("verdict: strictly dominated\n"), "{out}");

    let (code, out) = run(&["frontier", "--market", &arg(&golden("m0.csv")), "--grid", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("candidates: 11\nmaximal: 11\n"));

    let (_, out) = run(&["frontier", "--market", &m1, "--grid", "4", "--preset", "utility"]);
    let maximal: Vec<&str> = out.lines().skip(3).filter(|l| l.ends_with(",1,")).collect();
    assert!(!maximal.is_empty() && maximal.iter().all(|l| l.split(',').nth(4) == Some("2")), "{out}");
}

#[test]
fn malformed_market_rows_are_named() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "prob,asset_1,asset_2\n0.5,1,0\n0.5,1,oops\n").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_genmark"))
        .args(["analyze", "--market", &arg(&bad), "--weights", "0.5,0.5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 3"));
}
