mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Odd-even partitions and overpartitions: tables, identity checks,
/// asymptotic ratios and the circle-method pipeline.
#[derive(Parser, Debug)]
#[command(name = "oddeven", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "ODDEVEN_PRECISION", default_value_t = 256, value_parser = parse_prec)]
    pub prec: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Lift cost guards on enumeration, series order and small eps.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient table for n = 0..=n_max.
    Compute {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
    },
    /// Run a check suite; exit status 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Series order for the exact identities.
        #[arg(long, default_value_t = 200)]
        order: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Exact coefficients against the asymptotic law.
    Ratio {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Generating-function values against their leading asymptotics.
    GfEval {
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.02,0.01")]
        eps_grid: Vec<f64>,
    },
    /// Circle-method report for one coefficient.
    Circle {
        #[arg(long)]
        n: u64,
        #[arg(long = "M", default_value_t = 6.0)]
        m: f64,
        /// Sample points on the minor arc.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Oe,
    Oebar,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Series,
    Enum,
    WatsonProduct,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Asymptotics,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn parse_prec(s: &str) -> Result<usize, String> {
    let p: usize = s.parse().map_err(|e| format!("{e}"))?;
    if p < 64 {
        return Err(format!("precision {p} is below the 64-bit minimum"));
    }
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
