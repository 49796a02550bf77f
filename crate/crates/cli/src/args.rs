use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Lerch zeta function L(λ, a, s) for large complex a: reference values,
/// asymptotic expansions and Stokes multipliers.
#[derive(Debug, Parser)]
#[command(name = "lerch", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Significant decimal digits of the working precision.
    #[arg(long, global = true, env = "LERCH_DIGITS", default_value_t = 50)]
    pub digits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reference value of L(λ, a, s).
    Eval(Point),
    /// The K-term algebraic expansion in powers of 1/a.
    Poincare {
        #[command(flatten)]
        point: Point,
        /// Number of retained terms K.
        #[arg(long, default_value_t = 5)]
        terms: usize,
    },
    /// The exponentially improved expansion.
    Improved {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Emit every block of the expansion as JSON.
        #[arg(long)]
        breakdown: bool,
    },
    /// One Stokes multiplier S_n(θ).
    Stokes {
        #[command(flatten)]
        point: Point,
        /// Index n of the multiplier.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
    },
    /// S_n over a grid of θ at fixed |a|.
    Table {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Comma-separated θ/π values; defaults to the standard ± grid for n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Option<Vec<String>>,
    },
}

/// Parameters (λ, a, s). Numbers are decimals or fractions such as 2/3.
#[derive(Debug, Clone, Args)]
pub struct Point {
    #[arg(long)]
    pub lambda: String,
    /// Real part of s.
    #[arg(long, default_value = "4", allow_hyphen_values = true)]
    pub s: String,
    /// Imaginary part of s.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s_im: String,
    /// Real part of a (Cartesian form).
    #[arg(long, conflicts_with_all = ["a_mod", "theta"], allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Imaginary part of a (Cartesian form).
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    pub a_im: Option<String>,
    /// |a| (polar form).
    #[arg(long)]
    pub a_mod: Option<String>,
    /// arg a in units of π (polar form).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// Truncation indices N_0, N_1, … (comma-separated).
    #[arg(long, value_delimiter = ',', requires = "schedule_prime")]
    pub schedule: Option<Vec<usize>>,
    /// Truncation indices N′_0, N′_1, … (comma-separated).
    #[arg(long, value_delimiter = ',', requires = "schedule")]
    pub schedule_prime: Option<Vec<usize>>,
}
