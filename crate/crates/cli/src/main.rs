//! `golden`: extremal Hilbert modular forms for ℚ(√5) and golden lattices.
//!
//! Exit codes: 0 success, 1 mathematical mismatch, 2 usage or invalid input,
//! 3 resource limit (precision or time budget).

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    #[default]
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "golden", version, about = "Extremal Hilbert modular forms for Q(sqrt5) and golden lattices")]
pub struct Cli {
    /// Precision: largest i = Tr(η⁻¹X) kept in (q0,q1)-expansions [default: 8 for hmf/table, 3 for lattice]
    #[arg(long, global = true, env = "GOLDEN_PREC")]
    pub prec: Option<i64>,

    /// Worker threads for enumeration and table rows
    #[arg(long, global = true, env = "GOLDEN_THREADS")]
    pub threads: Option<usize>,

    #[arg(long, global = true, env = "GOLDEN_FORMAT", value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Seconds allowed for each isometry search
    #[arg(long, global = true, env = "GOLDEN_BUDGET", default_value_t = 60.0)]
    pub budget: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symmetric Hilbert modular forms
    #[command(subcommand)]
    Hmf(HmfCmd),
    /// The table of extremal forms
    #[command(subcommand)]
    Table(TableCmd),
    /// Lattices over ℤ[θ]
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand, Debug)]
pub enum HmfCmd {
    /// The extremal form of an even weight, with ν(f−1), kissing numbers and the subset column
    Extremal {
        #[arg(short, long)]
        weight: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableCmd {
    /// Recompute all twelve rows and diff them against the expected values
    Reproduce {
        /// TSV file of expected rows (same layout as `--format tsv` output)
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    F4,
    F4perp2,
    E8Golden,
}

#[derive(Args, Debug)]
pub struct LatticeSource {
    /// RGram JSON file `{n, entries: [[[a,b], …], …]}`
    #[arg(required_unless_present = "construct", conflicts_with = "construct")]
    pub file: Option<PathBuf>,
    /// Use a built-in lattice instead of a file
    #[arg(long, value_enum)]
    pub construct: Option<Builtin>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Hilbert theta series through the precision
    Theta {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Compare the theta series with the extremal form of weight n/2
    GoldenCheck {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// The (a²+5a+5)-modular trace lattice and its certificate
    Family {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(short, long)]
        a: i64,
    },
    /// Validate a golden candidate `{gram, T, sigma?, label}` and run the pipeline
    ImportGolden { file: PathBuf },
    /// Emit a built-in lattice as JSON
    Construct {
        #[arg(value_enum)]
        name: Builtin,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(report) => {
            println!("{}", report.render(cli.format));
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
