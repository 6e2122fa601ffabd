mod commands;
mod examples;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Certify Wasserstein curvature bounds for jump Markov generators.
#[derive(Debug, Parser)]
#[command(name = "mricci", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Arithmetic; defaults to rational unless an input value is written
    /// as a decimal.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report file, or the target directory for `examples`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated audit times; defaults to {0.1, 0.5, 1, 2, 5}/κ.
    #[arg(long, global = true, value_delimiter = ',')]
    tgrid: Option<Vec<f64>>,
    /// Truncation level for infinite families.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Write the (t, W₁) curves of every audit to this CSV file.
    #[arg(long, global = true)]
    emit_plot_data: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pair and global curvature of a generator file.
    Curvature(CurvatureArgs),
    /// Poisson-equation metric and decay certificate for a chain file.
    MetricDesign(MetricDesignArgs),
    /// Drift-condition certificate for a generator and a Lyapunov file.
    Lyapunov(LyapunovArgs),
    /// Block-dynamics certificate for a model file.
    Glauber(GlauberArgs),
    /// Numerical W₁ contraction audit of a generator and a metric.
    Audit(AuditArgs),
    /// Write the input files of a bundled family.
    Examples(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct MetricChoice {
    /// Metric file of `dist` lines.
    #[arg(long, conflicts_with = "weights")]
    metric: Option<PathBuf>,
    /// Weight file of `weight` lines; the length metric of the weights.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    generator: PathBuf,
    #[command(flatten)]
    metric: MetricChoice,
    /// Visit every pair even for length metrics.
    #[arg(long)]
    all_pairs: bool,
    /// Report a single pair.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pair: Option<Vec<String>>,
    /// With --pair, write the optimal transport plan as CSV.
    #[arg(long, requires = "pair")]
    plan: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricDesignArgs {
    chain: PathBuf,
    /// Use the bounded-below-curvature branch with this α.
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    generator: PathBuf,
    lyapunov: PathBuf,
    /// Weight β of the Lyapunov term; defaults to min(1/(4b), C).
    #[arg(long)]
    beta: Option<String>,
    /// Search β on a grid of this many points instead.
    #[arg(long, conflicts_with = "beta")]
    beta_grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GlauberArgs {
    model: PathBuf,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    generator: PathBuf,
    #[command(flatten)]
    metric: MetricChoice,
    /// Claimed rate; defaults to the global curvature lower bound.
    #[arg(long)]
    kappa: Option<String>,
    /// Claimed prefactor K in K e^{−κt} d(x,y).
    #[arg(long, default_value = "1")]
    prefactor: String,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    name: examples::Family,
    /// Size parameter (vertices, leaves, dimension, part size, chain size).
    #[arg(long)]
    n: Option<usize>,
    /// Second part size for `bipartite`, number of parts for `k-partite`.
    #[arg(long)]
    m: Option<usize>,
    /// Bundled metric to write alongside the generator.
    #[arg(long, value_enum)]
    metric: Option<examples::MetricName>,
    /// Rate parameter (λ, p or the birth rate b depending on the family).
    #[arg(long)]
    param: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors exit 1 so that 2 stays reserved for failed audits.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(jobs) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match &cli.command {
        Command::Curvature(a) => commands::curvature(a, &cli.common),
        Command::MetricDesign(a) => commands::metric_design(a, &cli.common),
        Command::Lyapunov(a) => commands::lyapunov(a, &cli.common),
        Command::Glauber(a) => commands::glauber(a, &cli.common),
        Command::Audit(a) => commands::audit(a, &cli.common),
        Command::Examples(a) => examples::write(a, &cli.common),
    };
    match outcome {
        Ok(commands::Verdict::Pass) => ExitCode::SUCCESS,
        Ok(commands::Verdict::AuditFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
