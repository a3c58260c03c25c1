//! Command-line front end.
//!
//! Subcommands: `analyze`, `relate`, `frontier`, `chain`, `sdom`, `kernel`,
//! `gen`. Exit codes: 0 success, 2 validation, 3 computation, 4 I/O.
//! Candidate and element indices are 0-based throughout.

pub mod commands;
pub mod config;
pub mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use self::config::{parse_objectives, DomainChoice, RunConfig};
use self::io::parse_weights;
use crate::domain::ObjectiveConfig;
use crate::error::Result;
use crate::market::DEFAULT_SAMPLES_PER_INTERVAL;
use crate::preorder::DEFAULT_EPSILON;

#[derive(Debug, Parser)]
#[command(name = "genmark", version, about = "Generalized Markowitz preferences on finite portfolio sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ObjectiveArgs {
    /// utility, markowitz, skew, kurt, skew-kurt, sd-L, markowitz-sd-L
    #[arg(long)]
    pub preset: Option<String>,
    /// Explicit objectives, e.g. "mean:max; variance:min; skew2:min:error"
    #[arg(long, conflicts_with = "preset")]
    pub objectives: Option<String>,
    /// Dominance order for the `sd` and `markowitz-sd` presets
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

impl ObjectiveArgs {
    fn to_config(&self) -> Result<ObjectiveConfig> {
        let mut run = RunConfig {
            preset: self.preset.clone(),
            sd_ell: self.ell,
            epsilon: self.epsilon,
            objectives: self.objectives.as_deref().map(parse_objectives).transpose()?,
            ..Default::default()
        };
        if run.preset.is_none() && run.objectives.is_none() {
            run.preset = Some("markowitz".into());
        }
        run.objective_config()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Return statistics of one portfolio
    Analyze {
        #[arg(long)]
        market: PathBuf,
        #[arg(long)]
        weights: String,
    },
    /// Dominance verdict between two portfolios
    Relate {
        #[arg(long)]
        market: PathBuf,
        #[command(flatten)]
        objectives: ObjectiveArgs,
        /// Give twice: x then y
        #[arg(long, required = true)]
        weights: Vec<String>,
    },
    /// Maximal set of a discretized domain
    Frontier(FrontierArgs),
    /// Extremal sets of a chain and their nesting properties
    Chain {
        #[arg(long)]
        market: PathBuf,
        #[command(flatten)]
        objectives: ObjectiveArgs,
        /// One per chain element
        #[arg(long, required = true)]
        weights: Vec<String>,
    },
    /// Stochastic dominance between two portfolios
    Sdom {
        #[arg(long)]
        market: PathBuf,
        /// Give twice: x then y
        #[arg(long, required = true)]
        weights: Vec<String>,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_INTERVAL)]
        samples_per_interval: usize,
    },
    /// Maximal elements of a kernel preorder with certificates
    Kernel {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Write a seeded synthetic scenario CSV
    Gen {
        #[arg(long)]
        n: usize,
        /// Scenario count
        #[arg(long)]
        scenarios: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = -0.1, allow_negative_numbers = true)]
        low: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        high: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FrontierArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub market: Option<PathBuf>,
    #[command(flatten)]
    pub objectives: ObjectiveArgs,
    /// simplex or ball
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Ball center, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl FrontierArgs {
    pub fn to_config(&self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            market: self.market.clone(),
            domain: self.domain.as_deref().map(str::parse::<DomainChoice>).transpose()?,
            n: self.n,
            grid: self.grid,
            samples: self.samples,
            seed: self.seed,
            center: self.center.as_deref().map(parse_weights).transpose()?,
            radius: self.radius,
            preset: self.objectives.preset.clone(),
            objectives: self.objectives.objectives.as_deref().map(parse_objectives).transpose()?,
            epsilon: self.objectives.epsilon,
            sd_ell: self.objectives.ell,
            frontier_out: self.out.clone(),
            plot_out: self.plot.clone(),
            threads: self.threads,
            ..Default::default()
        };
        let mut merged = base.overlay(flags);
        if merged.preset.is_none() && merged.objectives.is_none() {
            merged.preset = Some("markowitz".into());
        }
        Ok(merged)
    }
}

fn weight_lists(raw: &[String]) -> Result<Vec<Vec<f64>>> {
    raw.iter().map(|w| parse_weights(w)).collect()
}

/// Executes a parsed command, writing its report to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Analyze { market, weights } => commands::analyze(&market, parse_weights(&weights)?, out),
        Command::Relate { market, objectives, weights } => {
            commands::relate(&market, &objectives.to_config()?, &weight_lists(&weights)?, out)
        }
        Command::Frontier(args) => commands::frontier(&args.to_config()?, out).map(|_| ()),
        Command::Chain { market, objectives, weights } => {
            commands::chain(&market, &objectives.to_config()?, &weight_lists(&weights)?, out)
        }
        Command::Sdom { market, weights, ell, samples_per_interval } => {
            commands::sdom(&market, &weight_lists(&weights)?, ell, samples_per_interval, out)
        }
        Command::Kernel { matrix, epsilon } => commands::kernel(&matrix, epsilon, out),
        Command::Gen { n, scenarios, seed, low, high, out: target } => {
            commands::gen(n, scenarios, seed, low, high, target.as_deref(), out)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
