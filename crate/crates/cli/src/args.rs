use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "bpg", version, about = "Beta Poisson-G distributions: evaluation, properties, fitting and simulation")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate pdf, cdf, sf, hrf or quantile on a grid
    Eval(EvalArgs),
    /// Mean, variance, skewness and kurtosis
    Moments(MomentsArgs),
    /// Rényi entropy for a list of orders
    Entropy(EntropyArgs),
    /// Galton skewness and Moors kurtosis, optionally over a λ × β grid
    Galton(GaltonArgs),
    /// Fit competing models to a dataset by maximum likelihood
    Fit(FitArgs),
    /// Scaled total-time-on-test coordinates
    Ttt(DataArgs),
    /// Descriptive statistics of a dataset
    Describe(DataArgs),
    /// Bias and MSE of the estimators by simulation
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Omit the timestamp so repeated runs are byte-identical
    #[arg(long)]
    pub deterministic: bool,
    /// key=value file supplying defaults for any flag of this command
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Bp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineName {
    Exp,
    Weibull,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_enum, default_value = "bp")]
    pub family: FamilyName,
    #[arg(long, value_enum, default_value = "exp")]
    pub baseline: BaselineName,
    #[arg(long)]
    pub m: f64,
    #[arg(long)]
    pub n: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Baseline scale (rate for exp)
    #[arg(long)]
    pub beta: f64,
    /// Weibull shape
    #[arg(long)]
    pub shape: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Pdf,
    Cdf,
    Sf,
    Hrf,
    Quantile,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_enum)]
    pub what: What,
    /// start:stop:step, inclusive of stop
    #[arg(long)]
    pub grid: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentsMethod {
    Direct,
    QuantileSpace,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: MomentsMethod,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Comma-separated Rényi orders
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GaltonArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Sweep these λ values (exponential baseline only)
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Vec<f64>,
    /// Sweep these β values (exponential baseline only)
    #[arg(long, value_delimiter = ',')]
    pub betas: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Path to a data file or builtin:data1 / builtin:data2
    #[arg(long)]
    pub data: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Plain,
    Modified,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub data: String,
    /// Comma-separated model names: exp, me, mo_e, kw_e, b_e, bp_e, bp_w
    #[arg(long, value_delimiter = ',', required = true)]
    pub models: Vec<String>,
    #[arg(long, default_value_t = 20)]
    pub starts: usize,
    /// Anderson-Darling and Cramér-von Mises flavour
    #[arg(long, value_enum, default_value = "plain")]
    pub variant: Variant,
    #[arg(long, default_value_t = 0.95)]
    pub ci_level: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// m=..,n=..,lambda=..,beta=..[,shape=..]
    #[arg(long)]
    pub truth: String,
    #[arg(long, value_enum, default_value = "exp")]
    pub baseline: BaselineName,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,300")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    pub reps: usize,
    /// Run 3000 replications
    #[arg(long, conflicts_with = "reps")]
    pub full: bool,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Moments(_) => "moments",
            Command::Entropy(_) => "entropy",
            Command::Galton(_) => "galton",
            Command::Fit(_) => "fit",
            Command::Ttt(_) => "ttt",
            Command::Describe(_) => "describe",
            Command::Simulate(_) => "simulate",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Eval(a) => &a.common,
            Command::Moments(a) => &a.common,
            Command::Entropy(a) => &a.common,
            Command::Galton(a) => &a.common,
            Command::Fit(a) => &a.common,
            Command::Ttt(a) | Command::Describe(a) => &a.common,
            Command::Simulate(a) => &a.common,
        }
    }
}
