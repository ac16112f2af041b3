use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "neoplasm-opt", version, about = "Metaheuristic optimization and CT preprocessing toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CLAHE → Gaussian → median → normalize a PGM slice into an NRM1 raster.
    Preprocess(PreprocessArgs),
    /// Minimize a benchmark function with one metaheuristic.
    Optimize(OptimizeArgs),
    /// Hybrid HHO+BA wrapper feature selection on a labelled CSV.
    Select(SelectArgs),
    /// Staged SSA→GWO tuning of a benchmark or of the k-NN surrogate.
    Tune(TuneArgs),
    /// Generate a synthetic classification CSV with a ground-truth sidecar.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Input PGM (P5 or P2, maxval 255).
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: PathBuf,
    /// JSON config file or a previous run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub clip: Option<f64>,
    /// Tile grid as ROWSxCOLS, e.g. 8x8.
    #[arg(long, value_parser = parse_grid)]
    pub tiles: Option<(usize, usize)>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub ksize: Option<usize>,
    /// Also write 1_clahe.pgm, 2_gaussian.pgm and 3_median.pgm here.
    #[arg(long)]
    pub dump_stages: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Trace CSV path.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub alg: Option<String>,
    #[arg(long)]
    pub objective: Option<String>,
    #[arg(long)]
    pub dims: Option<usize>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Result JSON path; the trace goes to `<stem>.trace.csv` beside it.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Weight of the accuracy term in the fitness.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub folds: Option<usize>,
    /// Neighbours used by the k-NN surrogate.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Benchmark to minimize.
    #[arg(long, conflicts_with = "surrogate")]
    pub objective: Option<String>,
    /// Dataset CSV whose k-NN hyperparameters (k, p) are tuned.
    #[arg(long)]
    pub surrogate: Option<PathBuf>,
    #[arg(long)]
    pub dims: Option<usize>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub ssa_budget: Option<usize>,
    #[arg(long)]
    pub gwo_budget: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub folds: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// CSV path; the sidecar goes to `<stem>.truth.json`.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub informative: Option<usize>,
    #[arg(long)]
    pub redundant: Option<usize>,
    #[arg(long)]
    pub noise: Option<usize>,
    #[arg(long)]
    pub sep: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X', ','])
        .ok_or_else(|| format!("expected ROWSxCOLS, got '{s}'"))?;
    let num = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("'{v}': {e}"));
    Ok((num(r)?, num(c)?))
}
