use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quadunit", version, about = "Fundamental units, small-norm quadratic integers and their progressions")]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Working precision in bits for certified real output.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u64).range(64..))]
    pub precision: u64,

    /// Prime cutoff for truncated Euler products.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(3..))]
    pub cutoff: u64,

    /// Trial-division bound; overrides QUADUNIT_FACTOR_BUDGET.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    pub factor_budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Continued fraction of ω_d.
    Cf { d: String },
    /// Fundamental unit and regulator.
    Unit { d: String },
    /// Ideals of norm mu and the reduced-ideal count.
    Ideals { d: String, mu: String },
    /// Progression of radicands for one index pair.
    Progression {
        #[arg(allow_negative_numbers = true)]
        mu: String,
        j: u8,
        y: String,
        x: String,
        #[arg(long, default_value_t = 100_000)]
        scan_limit: u64,
    },
    /// Index pairs (y, x) with x² ≡ mu (mod y).
    Pairs {
        #[arg(allow_negative_numbers = true)]
        mu: String,
        #[arg(long)]
        j: Option<u8>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        y_max: u64,
    },
    /// Predicted and sampled square-free density of one progression.
    Density {
        #[arg(allow_negative_numbers = true)]
        mu: String,
        j: u8,
        y: String,
        x: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
        #[arg(long, default_value_t = 100_000)]
        scan_limit: u64,
    },
    /// Locate every witness radicand inside some progression.
    Coverage {
        #[arg(allow_negative_numbers = true)]
        mu: String,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
        t_max: u64,
        #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
        y_max: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
        #[arg(long, default_value_t = 100_000)]
        scan_limit: u64,
    },
    /// Solvability of a2·z² + a1·z + a0 ≡ 0 (mod p^m).
    Hensel {
        #[arg(allow_negative_numbers = true)]
        a2: String,
        #[arg(allow_negative_numbers = true)]
        a1: String,
        #[arg(allow_negative_numbers = true)]
        a0: String,
        p: u64,
        m: u32,
    },
    /// Cross-field surveys.
    #[command(subcommand)]
    Survey(Survey),
    /// Run the acceptance suite.
    Verify {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum Survey {
    /// Minimal elements of norm ±mu below x.
    EMu {
        #[arg(long, default_value = "2")]
        mu: String,
        /// The bound x, a decimal.
        #[arg(long, default_value = "100")]
        limit: String,
        /// Enumerate field by field instead of by trace.
        #[arg(long)]
        per_field: bool,
    },
    /// Distinct fields Q(√(T² − 4mu)) for 1 < T < N.
    FMu {
        #[arg(long, default_value = "2")]
        mu: String,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(3..))]
        limit: u64,
    },
    /// Radicands d <= N with a solution of X² − dY² = −1.
    Pell {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(2..))]
        limit: u64,
    },
    /// Regulator residuals against the quadratic lower bound.
    Bound {
        #[arg(long, default_value_t = 2)]
        mu: u64,
        /// Largest T.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(3..))]
        limit: u64,
        /// Count rows with residual below −probe.
        #[arg(long, default_value_t = 0.0)]
        probe: f64,
        /// Emit the summary instead of the rows.
        #[arg(long)]
        summary: bool,
    },
}
