//! The `foulkes` command-line tool: argument parsing, the commands, FHM1
//! matrix export, and the on-disk cache.

pub mod cache;
pub mod commands;
pub mod fhm;
pub mod result;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run, Outcome};
pub use result::{exit, Parameters, RunResult, Status};

#[derive(Debug, Parser)]
#[command(name = "foulkes", version, about = "Exact computations with the Foulkes-Howe map and plethysm multiplicities")]
pub struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Shape {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TableFormat {
    /// Print the per-partition table as CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build psi_{a x b} between orbit-sum bases and decide injectivity.
    Psi {
        #[command(flatten)]
        shape: Shape,
        /// Use the closed-form construction instead of composing raising operators.
        #[arg(long)]
        fused: bool,
        /// Write the matrix in FHM1 format.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
        /// Certify injectivity with several primes, confirming exactly when feasible.
        #[arg(long)]
        certify: bool,
        /// Comma-separated primes for the modular rank.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Run property suites over all cases with ab up to a bound.
    Verify {
        /// commute, invariance, factorization, qsplit, zeta, wedge or all.
        #[arg(long)]
        claims: String,
        #[arg(long = "max-ab")]
        max_ab: usize,
    },
    /// Compare multiplicities in Sym^a(Sym^b) and Sym^b(Sym^a) for every partition of ab.
    Foulkes {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Compare two-row multiplicities in Sym^a(Sym^b) and Sym^b(Sym^a).
    Hermite {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Multiplicities of irreducibles in Sym^a(Sym^b).
    Mult {
        #[command(flatten)]
        shape: Shape,
        /// A single partition such as 2,2,2.
        #[arg(long)]
        lambda: Option<String>,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Build the polynomial-side map Sym^a(Sym^b C^n) -> Sym^b(Sym^a C^n).
    Poly {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
}
