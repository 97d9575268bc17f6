mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liecov::Error;

#[derive(Parser, Debug)]
#[command(name = "liecov", version, about = "Covariant maps, invariant decompositions and point distributions")]
struct Cli {
    #[command(flatten)]
    cfg: JobConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct JobConfig {
    /// catalog name (sl2, sl3, sl4, so3) or structure-constant file
    #[arg(long, global = true, default_value = "sl2")]
    pub algebra: String,
    /// catalog id (adjoint, trivial, standard, dual-adjoint, irrepM, symK) or matrix file
    #[arg(long, global = true, default_value = "adjoint")]
    pub rep: String,
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = liecov::division::TOL_INPUT)]
    pub tol_input: f64,
    #[arg(long, global = true, default_value_t = liecov::division::TOL_RESIDUAL)]
    pub tol_residual: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a module basis of the covariants
    Basis,
    /// Decompose a covariant map, or pointwise samples, over the basis
    Decompose {
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        input: Option<PathBuf>,
        /// lines `x_1 … x_n : v_1 … v_m`
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Solve [x, Y(x)] = X(x) for a tangent field X
    Divide {
        #[arg(long)]
        input: PathBuf,
    },
    /// Replace a basis by a real one
    Realify {
        /// generators separated by `===`; defaults to the computed basis
        #[arg(long)]
        input: Option<PathBuf>,
        /// mix the basis with random complex coefficients first
        #[arg(long)]
        scramble: bool,
    },
    /// Factor covariant point distributions over the basis
    Factor {
        /// distribution file; without it every covariant distribution at the origin is factored
        #[arg(long)]
        input: Option<PathBuf>,
        /// order of the sweep when no input is given
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// require invariant θ
        #[arg(long)]
        invariant: bool,
    },
    /// Run the acceptance checks with a fixed seed
    Selftest {
        /// run a single criterion
        #[arg(long)]
        only: Option<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegreeBoundExceeded { .. } => 2,
        Error::NotCovariant { .. } => 3,
        Error::NotTangent { .. } => 4,
        Error::RetryBudgetExhausted(_) => 5,
        Error::NoFactorization { .. } => 6,
        _ => 1,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("LIECOV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    if cli.cfg.tol_input <= 0.0 || cli.cfg.tol_residual <= 0.0 {
        eprintln!("error: tolerances must be positive");
        return ExitCode::from(1);
    }
    if cli.cfg.degree_bound == Some(0) {
        eprintln!("error: degree bound must be at least 1");
        return ExitCode::from(1);
    }
    let cfg = &cli.cfg;
    let res = match cli.command {
        Command::Basis => commands::basis(cfg),
        Command::Decompose { input, samples } => commands::decompose(cfg, input.as_deref(), samples.as_deref()),
        Command::Divide { input } => commands::divide(cfg, &input),
        Command::Realify { input, scramble } => commands::realify(cfg, input.as_deref(), scramble),
        Command::Factor { input, order, invariant } => commands::factor(cfg, input.as_deref(), order, invariant),
        Command::Selftest { only } => commands::selftest(cfg, only),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
