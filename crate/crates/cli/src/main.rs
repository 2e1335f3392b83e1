use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superfock_core::SuperDim;

mod commands;
mod report;

use report::{CliError, Report};

/// Exact verification reports for oscillator realizations of osp(M/N).
#[derive(Parser, Debug)]
#[command(name = "superfock", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy, Debug)]
struct DimArgs {
    /// Rank of the symplectic part, M = 2m.
    #[arg(short = 'm', default_value_t = 1)]
    m: usize,
    /// Rank of the orthogonal part, N = 2n or 2n+1.
    #[arg(short = 'n', default_value_t = 1)]
    n: usize,
    /// Use N = 2n+1 instead of N = 2n.
    #[arg(long)]
    odd: bool,
}

impl DimArgs {
    fn dim(self) -> SuperDim {
        SuperDim::new(self.m, self.n, self.odd)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the positive and negative root systems.
    Roots {
        #[command(flatten)]
        dim: DimArgs,
    },
    /// Check that the lifted representation is a homomorphism, after the
    /// ad-identification and the Clifford–Weyl relations.
    VerifyHomomorphism {
        #[command(flatten)]
        dim: DimArgs,
        /// Number of copies L of the oscillator representation.
        #[arg(short = 'L', default_value_t = 2)]
        big_l: usize,
        /// Maximal polynomial degree of the test basis.
        #[arg(short = 'D', long = "degree", default_value_t = 4)]
        degree: u32,
    },
    /// Build the primitive vector Λ·R and report its weight.
    Primitive {
        #[command(flatten)]
        dim: DimArgs,
        #[arg(short = 'L', default_value_t = 2)]
        big_l: usize,
        /// Exponents i_1,…,i_m (default all zero).
        #[arg(long = "i", value_delimiter = ',')]
        i: Vec<u32>,
        /// Indices j_1,…,j_n (default all zero).
        #[arg(long = "j", value_delimiter = ',')]
        j: Vec<u32>,
        /// Also check annihilation by every negative root operator and the
        /// identities used to prove it.
        #[arg(long)]
        check: bool,
    },
    /// Unitarity conditions on integral weights.
    Classify {
        #[command(subcommand)]
        action: ClassifyCommand,
    },
    /// Run the descending chain v_0 → v_k → v_0 on the primitive vector of a
    /// lowest weight.
    Lemma42 {
        /// Weight "λ_1,…,λ_m;μ_1,…,μ_n".
        #[arg(allow_hyphen_values = true)]
        weight: String,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        odd: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ClassifyCommand {
    /// Evaluate the conditions for one weight.
    Check {
        /// Weight "λ_1,…,λ_m;μ_1,…,μ_n".
        #[arg(allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        odd: bool,
        /// Treat the weight as a highest weight.
        #[arg(long)]
        highest: bool,
    },
    /// List every passing integral lowest weight with entries in [−B, B].
    Enumerate {
        #[command(flatten)]
        dim: DimArgs,
        #[arg(long)]
        bound: i64,
        /// Build each primitive vector and compare weights.
        #[arg(long)]
        construct: bool,
    },
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Roots { dim } => commands::roots(dim.dim()),
        Command::VerifyHomomorphism { dim, big_l, degree } => commands::verify_homomorphism(dim.dim(), *big_l, *degree),
        Command::Primitive { dim, big_l, i, j, check } => commands::primitive(dim.dim(), *big_l, i, j, *check),
        Command::Classify { action: ClassifyCommand::Check { weight, odd, highest } } => {
            commands::classify_check(weight, *odd, *highest)
        }
        Command::Classify { action: ClassifyCommand::Enumerate { dim, bound, construct } } => {
            commands::classify_enumerate(dim.dim(), *bound, *construct)
        }
        Command::Lemma42 { weight, k, odd } => commands::lemma42(weight, *k, *odd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli.command);
    let elapsed = cli.timing.then(|| start.elapsed());
    match outcome {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Text => report.render_text(elapsed),
                Format::Json => report.render_json(elapsed) + "\n",
            };
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("superfock: {}", err.message);
            ExitCode::from(err.code())
        }
    }
}
