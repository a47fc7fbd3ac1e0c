//! Command line front end: colored Jones tables, A-polynomials, the AJ
//! verification pipeline, minimality scans and the self test.

mod cache;
mod commands;
mod golden;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit code for a successful run.
pub const EXIT_OK: u8 = 0;
/// Exit code for a failed verification.
pub const EXIT_MISMATCH: u8 = 1;
/// Exit code for a usage or parse error.
pub const EXIT_USAGE: u8 = 2;
/// Exit code for input outside the scope of the constructions.
pub const EXIT_OUT_OF_SCOPE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ajknots", version, about = "AJ conjecture checks for connected sums of torus knots")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Colored Jones polynomials with a degree-formula check column.
    Jones {
        /// Knot: U, T(p,q) or T(p,q)#T(a,b).
        knot: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
    },
    /// The A-polynomial, factored and expanded, with a cross-check.
    Apoly {
        /// Knot: U, T(p,q) or T(p,q)#T(a,b).
        knot: String,
    },
    /// Builds the candidate recurrence and runs every verification stage.
    Verify {
        /// A connected sum T(p,q)#T(a,b) with p and a of the same sign.
        knot: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
        /// Stop when a denominator vanishes at some color instead of
        /// skipping that color.
        #[arg(long)]
        strict_denominators: bool,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Searches for annihilators of bounded L-degree in a monomial window.
    Scan {
        /// A connected sum T(p,q)#T(a,b) with p and a of the same sign.
        knot: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Runs the acceptance suite and optional golden-file comparisons.
    Selftest {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
        /// Comma-separated criteria to run; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        /// Directory of golden files to compare against.
        #[arg(long)]
        golden: Option<std::path::PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct ScanArgs {
    /// Largest L-exponent of the ansatz.
    #[arg(long)]
    pub scan_degree: Option<i64>,
    /// M-exponent window lo:hi. Without windows the scan uses the
    /// support of the normalized candidate.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub m_window: Option<(i64, i64)>,
    /// t-exponent window lo:hi, required together with --m-window.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub t_window: Option<(i64, i64)>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, found '{s}'"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in '{s}'"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in '{s}'"))?;
    if lo > hi {
        return Err(format!("window {lo}:{hi} is empty"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = commands::run(&cli);
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}
