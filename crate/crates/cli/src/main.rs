//! `cvqe`: benchmark generation, Clifford initialization searches, noise
//! sweeps, scaling measurements and noisy VQE refinement.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{BenchArgs, OptimizeArgs, ScalingArgs, SweepArgs, VqeArgs};

/// Exit status for evaluation or internal failures.
const EXIT_INTERNAL: u8 = 1;
/// Exit status for invalid flags or unreadable inputs.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "cvqe", version, about = "Clifford-transformed initialization for noisy VQE")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Worker threads for the optimizer and samplers (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an Ising or XXZ benchmark Hamiltonian file.
    Bench(BenchArgs),
    /// Run the transformation search or a Clifford baseline.
    Optimize(OptimizeArgs),
    /// Sweep a noise channel and report relative improvements.
    Sweep(SweepArgs),
    /// Time optimizer rounds across problem sizes.
    Scaling(ScalingArgs),
    /// Refine an initial point with SPSA under the full noise model.
    Vqe(VqeArgs),
}

/// Failure classified by exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl CliError {
    fn parts(&self) -> (u8, &anyhow::Error) {
        match self {
            CliError::Usage(e) => (EXIT_USAGE, e),
            CliError::Internal(e) => (EXIT_INTERNAL, e),
        }
    }
}

impl From<clifford_vqe::Error> for CliError {
    fn from(e: clifford_vqe::Error) -> Self {
        use clifford_vqe::Error as E;
        match e {
            E::Io { .. }
            | E::Parse { .. }
            | E::NoTerms(_)
            | E::InvalidNoise(_)
            | E::MissingNoise { .. }
            | E::InvalidConfig(_)
            | E::InvalidInput(_)
            | E::SizeCap { .. }
            | E::ParamLength { .. }
            | E::ParamRange { .. }
            | E::Probability(_)
            | E::WidthMismatch { .. }
            | E::NoSamples => CliError::Usage(e.into()),
            other => CliError::Internal(other.into()),
        }
    }
}

impl From<clifford_vqe::ga::OptimizeError> for CliError {
    fn from(e: clifford_vqe::ga::OptimizeError) -> Self {
        CliError::from(clifford_vqe::Error::from(e))
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::Usage(anyhow::anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.into()))?;
    }
    match cli.command {
        Command::Bench(a) => commands::bench(&a),
        Command::Optimize(a) => commands::optimize(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Scaling(a) => commands::scaling(&a),
        Command::Vqe(a) => commands::vqe(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (code, e) = err.parts();
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
