use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tailmatch::PMode;

#[derive(Parser, Debug)]
#[command(
    name = "tailmatch",
    version,
    about = "Seedless graph matching via tail degree signatures",
    long_about = "Generates correlated Erdos-Renyi pairs, matches graphs with the \
                  TDS-h (Hungarian) or TDS-g (greedy) pipeline, evaluates matchings, \
                  and reproduces the accuracy and score experiments as CSV. Every \
                  subcommand is deterministic given its full flag set including the \
                  seed (bench wall-time columns excepted)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a correlated graph pair into a directory
    /// (a.edges, b.edges, truth.perm, meta.json).
    Generate(GenerateArgs),
    /// Match two edge-list graphs and write the label-to-label matching.
    Match(MatchArgs),
    /// Score a matching file against a ground-truth file.
    Eval(EvalArgs),
    /// Sweep s over replicated synthetic pairs and emit an accuracy CSV.
    Bench(BenchArgs),
    /// Run the tail-vs-center score experiment and emit a CSV.
    Tailscore(TailscoreArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PModeArg {
    /// Use --p as given.
    Explicit,
    /// p = ln(n)/n.
    Logn,
    /// p = ln(n)^2/n.
    Log2n,
}

impl From<PModeArg> for PMode {
    fn from(value: PModeArg) -> PMode {
        match value {
            PModeArg::Explicit => PMode::Explicit,
            PModeArg::Logn => PMode::LogNOverN,
            PModeArg::Log2n => PMode::Log2NOverN,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormatArg {
    Whitespace,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatcherArg {
    Hungarian,
    Greedy,
    /// Hungarian up to n = 2000, greedy beyond.
    Auto,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMatcherArg {
    Hungarian,
    Greedy,
    Both,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Node count.
    #[arg(long)]
    pub n: usize,
    /// Parent edge probability (required with --p-mode explicit).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "explicit")]
    pub p_mode: PModeArg,
    /// Per-child edge retention probability.
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct FeatureArgs {
    /// Smallest/largest degrees kept per BFS layer.
    #[arg(long, default_value_t = 10)]
    pub theta: usize,
    /// Maximum BFS distance.
    #[arg(long, default_value_t = 2)]
    pub lambda: usize,
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    /// Edge list of the first graph.
    #[arg(long)]
    pub a: PathBuf,
    /// Edge list of the second graph.
    #[arg(long)]
    pub b: PathBuf,
    /// Treat labels as dense ids in [0, n): keeps isolated nodes of
    /// generated pairs, whose edge lists cannot carry them.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "whitespace")]
    pub format: FormatArg,
    /// Keep only rows with a strictly positive weight column.
    #[arg(long)]
    pub positive_only: bool,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub matcher: MatcherArg,
    /// Output matching file (two tab-separated label columns).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Matching file produced by `match`.
    #[arg(long)]
    pub matching: PathBuf,
    /// Ground-truth mapping file.
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value = "whitespace")]
    pub format: FormatArg,
    #[arg(long)]
    pub positive_only: bool,
    #[command(flatten)]
    pub features: FeatureArgs,
    /// Append the CSV row here instead of printing to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "logn")]
    pub p_mode: PModeArg,
    /// Comma-separated retention probabilities to sweep.
    #[arg(long, value_delimiter = ',', required = true)]
    pub s_grid: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub matcher: BenchMatcherArg,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TailscoreArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "logn")]
    pub p_mode: PModeArg,
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.6,0.7,0.8,0.9")]
    pub s_grid: Vec<f64>,
    /// Samples per instance.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Instances averaged per s.
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Tail/center split point for |x|.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    #[arg(long, default_value_t = 0.25)]
    pub bin_width: f64,
    #[arg(long, default_value_t = 6.0)]
    pub support_clip: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}
