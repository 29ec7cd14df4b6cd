//! Command-line driver for the Eulerian collinear orbit solver.

use clap::{Parser, Subcommand};
use euler3b::MassTriple;
use euler3b_cli::commands::{self, parse_masses};
use euler3b_cli::svg::Plane;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "euler3b",
    version,
    about = "Find and verify Eulerian collinear periodic orbits of the three-body problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the collinear ratio and print the derived constants
    Lambda0 {
        /// Three comma-separated masses, e.g. 1,1,1
        #[arg(long, value_parser = parse_masses)]
        masses: MassTriple,
    },
    /// Minimize the reduced action from a circular initial loop
    Minimize {
        #[arg(long, value_parser = parse_masses)]
        masses: MassTriple,
        /// Loop period
        #[arg(long)]
        period: f64,
        /// Number of odd harmonics
        #[arg(long, default_value_t = euler3b::DEFAULT_HARMONICS)]
        harmonics: usize,
        /// Quadrature grid points
        #[arg(long, default_value_t = euler3b::DEFAULT_GRID)]
        grid: usize,
        /// Gradient-norm convergence tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Amplitude of a seeded random perturbation of the initial circle
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output orbit file (JSON)
        #[arg(long)]
        out: PathBuf,
    },
    /// Saddle search with continuation over the perturbation strengths
    MountainPass {
        #[arg(long, value_parser = parse_masses)]
        masses: MassTriple,
        #[arg(long)]
        period: f64,
        /// Fixed energy h; defaults to -s/4 for the given masses
        #[arg(long)]
        energy: Option<f64>,
        /// Comma-separated strictly decreasing perturbation strengths
        #[arg(long, value_delimiter = ',', required = true)]
        epsilon: Vec<f64>,
        #[arg(long = "path-nodes", default_value_t = 33)]
        path_nodes: usize,
        #[arg(long, default_value_t = euler3b::DEFAULT_HARMONICS)]
        harmonics: usize,
        #[arg(long, default_value_t = euler3b::DEFAULT_GRID)]
        grid: usize,
        /// Gradient-norm tolerance at the saddle
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute every diagnostic of a stored orbit and gate the thresholds
    Verify { file: PathBuf },
    /// Integrate a stored orbit over one period and report the closure
    Integrate {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Optional time-series CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the body traces and the relative curve as SVG
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Plane::Xy)]
        plane: Plane,
    },
}

fn main() -> ExitCode {
    // Argument errors are validation errors (exit 1); help and version
    // requests surface as Err in clap but exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Lambda0 { masses } => commands::run_lambda0(masses),
        Command::Minimize {
            masses,
            period,
            harmonics,
            grid,
            tol,
            max_iter,
            perturb,
            seed,
            out,
        } => commands::run_minimize(
            masses, *period, *harmonics, *grid, *tol, *max_iter, *perturb, *seed, out,
        ),
        Command::MountainPass {
            masses,
            period,
            energy,
            epsilon,
            path_nodes,
            harmonics,
            grid,
            tol,
            max_iter,
            out,
        } => commands::run_mountain_pass(
            masses,
            *period,
            *energy,
            epsilon,
            *path_nodes,
            *harmonics,
            *grid,
            *tol,
            *max_iter,
            out,
        ),
        Command::Verify { file } => commands::run_verify(file),
        Command::Integrate { file, steps, out } => {
            commands::run_integrate(file, *steps, out.as_deref())
        }
        Command::Plot { file, out, plane } => commands::run_plot(file, out, *plane),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
