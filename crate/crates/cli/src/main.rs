mod commands;
mod dto;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact-arithmetic batch reports: root data, torus GIT walls and chambers,
/// invariant suites, and master-space identity checks. All reports are JSON;
/// a fixed seed makes every report byte-identical across runs.
#[derive(Parser)]
#[command(name = "implosion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Numeric rendering: exact "p/q" strings or decimal floats.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Seed for every randomized sample.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Tolerance for float-route comparisons; must be positive in float mode.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Root-system report: roots, coroots, fundamental weights, Cartan
    /// matrix, and cone faces with their decomposition dimensions.
    Roots { series: String, rank: usize },
    /// Wall-and-chamber report for a weight configuration JSON file.
    Chambers {
        config: PathBuf,
        /// Re-sample every chamber and fail on any fingerprint drift.
        #[arg(long)]
        verify: bool,
        /// Include each chamber's semistable support classes.
        #[arg(long)]
        supports: bool,
    },
    /// Run the invariant suites and summarize per-suite results.
    VerifyAll {
        /// Run a single suite instead of all six.
        #[arg(long)]
        suite: Option<String>,
        /// Cap on the root-system rank the suites sweep.
        #[arg(long)]
        rank: Option<usize>,
        /// Base sample count per suite.
        #[arg(long)]
        samples: Option<usize>,
        /// Corrupt the semistability sign on purpose; the m-oracle suite
        /// must then fail with a witness. Self-test hook.
        #[arg(long, hide = true)]
        negate_m_sign: bool,
    },
    /// Master-space identity checks driven by an {r, epsilon, grid} JSON
    /// spec: rescaling identity over an s-grid, boundary non-vanishing,
    /// moment-shift interiority, product-one embedding.
    MasterCheck { spec: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
