//! Command-line front end for the disk solver: problem registry, run
//! configuration, and CSV/JSON output.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod registry;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, PartialConfig};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "sobolev-ball", version, about = "Diagonalized spectral solver for -Δu + λ(1-|x|²)^κ u = f on the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Fourier–Sobolev coefficients, a grid evaluation and a summary.
    Solve(RunArgs),
    /// Squared energy-norm errors for N = 0..=degree.
    Convergence(RunArgs),
    /// Cartesian monomial table of the radial-times-harmonic basis.
    Basis(RunArgs),
}

#[derive(Debug, Args, Default)]
pub struct RunArgs {
    /// exp2d, zero, or manufactured:seed=S[,deg=D]
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub kappa: Option<u32>,
    /// Truncation degree N (at most 64).
    #[arg(short = 'N', long = "degree")]
    pub degree: Option<usize>,
    /// Extra nodes on both axes of the disk quadrature.
    #[arg(long)]
    pub quad_margin: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// key=value file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    pub fn resolve(&self) -> CliResult<config::RunConfig> {
        let flags = PartialConfig {
            problem_id: self.problem.clone(),
            lambda: self.lambda,
            kappa: self.kappa,
            degree: self.degree,
            quad_margin: self.quad_margin,
            output_dir: self.out.clone(),
            format: self.format,
        };
        let file = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        flags.over(file).resolve()
    }
}

/// Runs one command and returns the files it wrote.
pub fn run(cli: &Cli) -> CliResult<Vec<PathBuf>> {
    match &cli.command {
        Command::Solve(a) => Ok(commands::cmd_solve(&a.resolve()?)?.files),
        Command::Convergence(a) => Ok(commands::cmd_convergence(&a.resolve()?)?.files),
        Command::Basis(a) => Ok(commands::cmd_basis(&a.resolve()?)?.files),
    }
}
