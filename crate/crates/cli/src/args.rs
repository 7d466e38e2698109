use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use strata_core::invariants::Normalization;

#[derive(Debug, Parser)]
#[command(
    name = "minstrata",
    version,
    about = "Exact intersection numbers, volumes and Siegel-Veech constants of the minimal strata H(2g-2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact table of a_g, d_g, volumes, area constants and residuals.
    Table(TableArgs),
    /// Large-genus expansion coefficients in Q[pi^2].
    Expand(ExpandArgs),
    /// Oracle, invariant and empirical-order checks.
    Verify(VerifyArgs),
    /// CSV of rescaled residuals for plotting.
    Plotdata(PlotdataArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Volume,
    Sv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Conjecture,
    Theorem,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Conjecture => Normalization::Conjecture,
            NormalizationArg::Theorem => Normalization::Theorem,
        }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub gmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Working precision of the numeric columns, in bits.
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Highest power of 1/g to print (at most 8).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=8))]
    pub order: u32,
    #[arg(long, value_enum)]
    pub target: TargetArg,
    /// Volume prefactor; ignored for `sv`.
    #[arg(long, value_enum, default_value_t = NormalizationArg::Conjecture)]
    pub normalization: NormalizationArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 40)]
    pub gmax: u32,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=8))]
    pub order: u32,
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotdataArgs {
    #[arg(long)]
    pub gmax: u32,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Conjecture)]
    pub normalization: NormalizationArg,
}
