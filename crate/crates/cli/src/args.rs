use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nest", version, about = "Fit, sample and audit neighborhood-structure configuration models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run color refinement and export per-depth colorings.
    Refine(RefineArgs),
    /// Draw one sample that keeps every node's colors up to a depth.
    Sample(SampleArgs),
    /// Compute a centrality vector.
    Centrality(CentralityArgs),
    /// Compare a sample against its original.
    Compare(CompareArgs),
    /// Draw from a baseline null model.
    Baseline(BaselineArgs),
    /// Run the depth sweep (and optionally baselines), writing CSV files.
    Experiment(ExperimentArgs),
    /// Check samples against the color, bound and iterate-prefix invariants.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list: one "u v" pair per line, '#' starts a comment.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Read edges as ordered pairs.
    #[arg(long)]
    pub directed: bool,
    /// Drop repeated edges instead of failing.
    #[arg(long)]
    pub dedup: bool,
    /// Drop self-loops instead of failing.
    #[arg(long)]
    pub strip_self_loops: bool,
    /// Node count, for graphs with trailing isolated nodes.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Initial colors: const, outdeg, or file:PATH (one color per line).
    #[arg(long, default_value = "const")]
    pub init: String,
    /// Neighborhood used by refinement; defaults to undirected for undirected
    /// graphs and in for directed ones.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    In,
    Out,
    Both,
    Undirected,
    Gram,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of rounds; refine until stable when omitted.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Directory for colors_<t>.txt files.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgArg {
    /// Independent rewiring of every block.
    Subgraph,
    /// Steps spread over randomly chosen blocks.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlockChoiceArg {
    Uniform,
    Edges,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Depth whose colors the sample keeps (at least 1).
    #[arg(long, short)]
    pub depth: usize,
    #[arg(long, value_enum, default_value = "subgraph")]
    pub alg: AlgArg,
    /// Switch attempts per block edge (subgraph algorithm).
    #[arg(long, default_value_t = 10.0)]
    pub rate: f64,
    /// Total steps (global algorithm); defaults to twice the edge count.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Block choice of the global algorithm.
    #[arg(long, value_enum, default_value = "uniform")]
    pub block_choice: BlockChoiceArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rewire with the colors of this depth, from colors injected into the
    /// last round (file:PATH).
    #[arg(long)]
    pub inject: Option<PathBuf>,
    /// Run blocks one after another.
    #[arg(long)]
    pub sequential: bool,
    /// Output edge list; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Write swap statistics as JSON.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pr,
    Ev,
    Katz,
    Auth,
    Hub,
}

#[derive(Debug, Args)]
pub struct IterArgs {
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Katz attenuation; half the inverse spectral radius estimate when omitted.
    #[arg(long = "a")]
    pub attenuation: Option<f64>,
    /// Stop when successive iterates differ by less than this (sum of absolute errors).
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "pr")]
    pub kind: KindArg,
    #[command(flatten)]
    pub iter: IterArgs,
    /// Write the power-iteration trace (pr and ev only), one iterate per line.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Trace length; defaults to the iterations the solver used.
    #[arg(long)]
    pub trace_steps: Option<usize>,
    /// Scores, one per line; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Metadata JSON; stderr when omitted.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub original: PathBuf,
    #[arg(long)]
    pub sample: PathBuf,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, short)]
    pub depth: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineModel {
    /// Uniform graph with the original's node and edge count.
    Er,
    /// Configuration model (depth-1 sample from constant colors).
    Cm,
    /// PageRank-similarity exponential random graph model.
    Ergm,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub model: BaselineModel,
    /// ERGM similarity weights; several values give one output per value.
    #[arg(long, value_delimiter = ',', default_value = "30")]
    pub theta: Vec<f64>,
    /// ERGM proposals.
    #[arg(long, default_value_t = 5_000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Switch attempts per edge for the configuration model.
    #[arg(long, default_value_t = 10.0)]
    pub rate: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output edge list; with several thetas, `_theta<T>` is added before the
    /// extension. Stdout when omitted (single output only).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Centralities to evaluate.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "pr")]
    pub kinds: Vec<KindArg>,
    /// Depths, as a list ("1,2,4") or inclusive range ("1..5").
    #[arg(long, default_value = "1..3")]
    pub depths: String,
    /// Samples per depth.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10.0)]
    pub rate: f64,
    #[command(flatten)]
    pub iter: IterArgs,
    /// Also draw Erdős–Rényi, configuration-model and ERGM samples.
    #[arg(long)]
    pub baselines: bool,
    #[arg(long, value_delimiter = ',', default_value = "0,10,20,30,40,60")]
    pub thetas: Vec<f64>,
    #[arg(long, default_value_t = 5_000)]
    pub ergm_steps: usize,
    /// Samples per ERGM theta; defaults to --samples.
    #[arg(long)]
    pub ergm_samples: Option<usize>,
    /// Run cells one after another.
    #[arg(long)]
    pub sequential: bool,
    /// Receives samples.csv, summary.csv and timings.csv.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Samples to check; when none are given, --count samples are drawn.
    #[arg(long)]
    pub sample: Vec<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, short)]
    pub depth: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10.0)]
    pub rate: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write all reports as a JSON array.
    #[arg(long)]
    pub json: Option<PathBuf>,
}
