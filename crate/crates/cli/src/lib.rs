//! Batch front end for adjacent 2-minor ideals of collections of cells.

pub mod commands;
pub mod error;
pub mod records;

use std::path::PathBuf;

use adjminor::enumerate::Filter;
use adjminor::radicality::Method;
use clap::{Parser, Subcommand, ValueEnum};

use crate::records::Format;

/// Default per-collection budget in seconds, overridden by `--budget`.
pub const BUDGET_ENV: &str = "ADJMINOR_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "adjminor",
    version,
    about = "Adjacent 2-minor ideals of collections of cells"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "jsonl")]
    pub format: Format,

    /// Add wall-clock timings to records. Output is then no longer byte-stable.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream weakly connected collections of a given rank.
    Enumerate {
        #[arg(long)]
        rank: usize,
        /// One representative per orbit under translations and the dihedral group.
        #[arg(long)]
        up_to_symmetry: bool,
        #[arg(long, value_parser = parse_filter)]
        filter: Vec<Filter>,
        /// Raise the rank limit.
        #[arg(long, default_value_t = adjminor::enumerate::DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    /// Unmixedness, obstruction patterns and radicality, one record per input line.
    Classify {
        /// Input file with one encoded collection per line, or `-` for stdin.
        input: PathBuf,
        /// Include the minimal primes.
        #[arg(long)]
        primes: bool,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Minimal primes with their generators.
    MinimalPrimes { input: PathBuf },
    /// Decide radicality.
    Radical {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Wall-clock budget per collection, in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Reduced Gröbner basis of the adjacent 2-minor ideal.
    Groebner {
        input: PathBuf,
        /// `lex:v1>v2>...` or `degrevlex:v1>...`; variables are `i,j`, `x_{i,j}`,
        /// or labels such as `a0`, `c_{t+1}` when the input is a member of the `D_t` family.
        #[arg(long)]
        order: String,
    },
    /// Recompute reference tables and examples.
    Reproduce {
        #[arg(long, value_enum)]
        table: Table,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Largest rank for the census tables.
        #[arg(long)]
        rank_max: Option<usize>,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Check that every library configuration is minimally non-radical.
    ValidateConfigs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    Witness,
    Screen,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Exact => Method::Exact,
            MethodArg::Witness => Method::Witness,
            MethodArg::Screen => Method::Screen,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Census,
    Nonradical,
    Remark26,
    Remark38,
    Prop44,
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    s.parse().map_err(|e: adjminor::Error| e.to_string())
}
