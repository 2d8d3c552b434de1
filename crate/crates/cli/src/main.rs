use std::path::PathBuf;

use bohmlab::{Overrides, Subcommand};
use clap::{Args, Parser};

#[derive(Parser)]
#[command(name = "bohmlab", version, about = "Pilot-wave trajectory scenarios on a grid")]
enum Cli {
    /// Eigenstate of the infinite well
    Stationary(RunArgs),
    /// Sudden removal of the well walls
    Release(RunArgs),
    /// Impulsive measurement of a discrete observable
    Vonneumann(RunArgs),
    /// Adiabatic coupling of a well mode to a heavy pointer
    Protective(RunArgs),
    /// Protective coupling over a range of switching durations
    Sweep(RunArgs),
    /// Derived fields of a scenario's characteristic state
    Fields(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// Override `ensemble.seed`
    #[arg(long)]
    seed: Option<u64>,
    /// Override `output.field_snapshots`
    #[arg(long)]
    snapshots: Option<usize>,
}

fn main() {
    let (sub, args) = match Cli::parse() {
        Cli::Stationary(a) => (Subcommand::Stationary, a),
        Cli::Release(a) => (Subcommand::Release, a),
        Cli::Vonneumann(a) => (Subcommand::VonNeumann, a),
        Cli::Protective(a) => (Subcommand::Protective, a),
        Cli::Sweep(a) => (Subcommand::Sweep, a),
        Cli::Fields(a) => (Subcommand::Fields, a),
    };
    let code = bohmlab::run(sub, &args.config, &args.out, Overrides { seed: args.seed, snapshots: args.snapshots });
    std::process::exit(code);
}
