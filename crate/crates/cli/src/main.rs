mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "tauli",
    version,
    about = "Generalized tau-Li coefficients for products of shifted zeta functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zero-table utilities.
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Compute λ(n, τ) over an n-grid and write li_tau<τ>.csv.
    Compute(ComputeArgs),
    /// Render a CSV as an SVG plot.
    Plot(PlotArgs),
    /// Compare the zero-sum and arithmetic routes.
    Crosscheck(CrosscheckArgs),
    /// Apply the τ-Li criterion to a CSV.
    Criterion(CriterionArgs),
    /// Fit centers against C_F·τ·n·log n.
    Fit(FitArgs),
    /// Criterion check for ζ(s − a)ζ(s + a) at τ = 2a + 1.
    Rh(RhArgs),
}

#[derive(Subcommand)]
enum ZerosAction {
    /// Parse and check a zero table.
    Validate(ZeroArgs),
}

#[derive(Args, Clone)]
struct ZeroArgs {
    /// Ordinate file, one or more per line, ascending.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// High-precision leading ordinates replacing the first entries.
    #[arg(long)]
    zeros_head: Option<PathBuf>,
    /// Error bound on the bulk ordinates.
    #[arg(long, default_value = tauli::zeros::DEFAULT_THETA0)]
    theta0: String,
    /// Error bound on the head ordinates (ignored without --zeros-head).
    #[arg(long, default_value = tauli::zeros::DEFAULT_THETA1)]
    theta1: String,
    /// Use only the first N ordinates.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Comma-separated shifts αᵢ.
    #[arg(long, default_value = "1,2,3,4")]
    shifts: String,
    #[arg(long)]
    tau: String,
    /// start:stop[:step], inclusive.
    #[arg(long)]
    n: String,
    /// Decimal digits for zero sums.
    #[arg(long, env = "TAULI_PREC", default_value_t = 50)]
    prec: u32,
    /// Decimal digits for the arithmetic route (default 160 above σ₀, 60 otherwise).
    #[arg(long)]
    arith_prec: Option<u32>,
    /// Arithmetic formula to use.
    #[arg(long, value_enum, default_value_t = ArithRoute::HighTau)]
    arith_route: ArithRoute,
    /// Prime-power cutoff for the Dirichlet sum.
    #[arg(long, default_value_t = tauli::arithmetic::DEFAULT_M_TRUNC)]
    m_trunc: u64,
    /// Worker threads for zero sums (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Ordinate pairs per summation chunk.
    #[arg(long, default_value_t = tauli::zerosum::DEFAULT_CHUNK_PAIRS)]
    chunk: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    ZeroSum,
    Arithmetic,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ArithRoute {
    /// Dirichlet-series formula, σ₀ < τ ≤ 2σ₀.
    HighTau,
    /// Laurent-coefficient formula.
    General,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Method::ZeroSum)]
    method: Method,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    zeros: ZeroArgs,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    csv: PathBuf,
    /// Overlay y = c·n·log n.
    #[arg(long)]
    overlay_nlogn: Option<f64>,
    /// Output SVG path (default: the CSV path with .svg).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    zeros: ZeroArgs,
    /// Multiply c_F(m) by a factor in the arithmetic route, as m:factor.
    #[arg(long, hide = true)]
    corrupt_coefficient: Option<String>,
}

#[derive(Args)]
struct CriterionArgs {
    #[arg(long)]
    csv: PathBuf,
    /// τ of the CSV (default: read from the li_tau<τ>.csv file name).
    #[arg(long)]
    tau: Option<String>,
    /// Method rows to use (default: zero_sum if present).
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    cf: f64,
    #[arg(long)]
    tau: String,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct RhArgs {
    #[arg(long)]
    a: String,
    #[arg(long, default_value_t = 100)]
    nmax: u32,
    #[arg(long, env = "TAULI_PREC", default_value_t = 50)]
    prec: u32,
    #[command(flatten)]
    zeros: ZeroArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Zeros {
            action: ZerosAction::Validate(z),
        } => commands::zeros_validate(&z),
        Command::Compute(a) => commands::compute(&a),
        Command::Plot(a) => commands::plot(&a),
        Command::Crosscheck(a) => commands::crosscheck(&a),
        Command::Criterion(a) => commands::criterion(&a),
        Command::Fit(a) => commands::fit(&a),
        Command::Rh(a) => commands::rh(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
