use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "levytandem", version, about = "Workloads of a two-node fluid tandem fed by Lévy input")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate a workload transform at the points given by --s.
    LstEval,
    /// Invert a workload transform into tail probabilities on --xs.
    Invert,
    /// Heavy-traffic approximation of the downstream tail on --xs.
    Approx,
    /// Monte Carlo estimate of the downstream tail on --xs.
    Simulate,
    /// Approximations next to simulated (or reference) tail values.
    Compare,
    /// Regenerate one of the built-in tables.
    Repro {
        #[arg(value_enum)]
        table: ReproTable,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproTable {
    Table1,
    Table2,
    Table3,
    FigCorrelation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Brownian,
    CpExp,
    CpPareto,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "ml")]
    MittagLeffler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Upstream,
    Downstream,
    Joint,
    Total,
    /// The exponential law μ/(μ + s); needs no tandem.
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Euler,
    Stehfest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Options shared by every subcommand. Each one can also be set in the
/// configuration file; the command line wins.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// key = value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelArg>,
    /// Upstream load E J₁/r₁.
    #[arg(long, global = true)]
    pub rho1: Option<f64>,
    /// Downstream load E J₁/r₂.
    #[arg(long, global = true)]
    pub rho2: Option<f64>,
    /// Upstream service rate.
    #[arg(long, global = true)]
    pub r1: Option<f64>,
    /// Downstream service rate.
    #[arg(long, global = true)]
    pub r2: Option<f64>,
    /// Rate ratio of the two-node heavy-traffic parametrization.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Downstream spare capacity r₂ − E J₁ (with --gamma).
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Variance of the Brownian input per unit time.
    #[arg(long, global = true)]
    pub sigma2: Option<f64>,
    /// Arrival rate (compound Poisson) or mean input rate (Brownian, stable).
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Exponential rate, or reciprocal mean of Pareto jobs.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Pareto tail index.
    #[arg(long, global = true)]
    pub nu: Option<f64>,
    /// Stability index of α-stable input.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,

    /// Comma-separated tail abscissae.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub xs: Option<Vec<f64>>,
    /// Comma-separated transform arguments; complex values as a+bi.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Second argument of the joint transform.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s2: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub transform: Option<TransformArg>,
    #[arg(long, global = true, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Inversion algorithm.
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Simulation budget: arrivals (compound Poisson) or grid steps.
    #[arg(long, global = true)]
    pub simulate: Option<u64>,
    #[arg(long, global = true)]
    pub replications: Option<usize>,
    #[arg(long, global = true)]
    pub batches: Option<usize>,
    /// Time horizon of diffusive simulations.
    #[arg(long, global = true)]
    pub horizon: Option<f64>,
    /// Reference values for compare: table1, table2, table3 or a CSV path.
    #[arg(long, global = true)]
    pub reference: Option<String>,

    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Report errors on stderr as one JSON object.
    #[arg(long, global = true)]
    pub json_errors: bool,
}
