use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod format;

use config::{merge, ConfigFile};
use error::CliError;
use format::Format;

#[derive(Parser, Debug)]
#[command(
    name = "pto",
    version,
    about = "Spectra and level pressures of the Pöschl-Teller oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact energy and pressure table for n = 1..n-max
    Spectrum(SpectrumArgs),
    /// One level followed across a range of half-width or well depth
    Sweep(SweepArgs),
    /// Exact levels against a limiting, semiclassical or perturbative approximation
    Compare(CompareArgs),
    /// Closed forms against finite-difference eigenvalues and numerical pressures
    Validate(ValidateArgs),
}

/// Physical parameters and output options shared by all subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Particle mass [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Well intensity V0
    #[arg(long, allow_negative_numbers = true)]
    pub well_depth: Option<f64>,
    /// Confinement half-width L
    #[arg(long, allow_negative_numbers = true)]
    pub half_width: Option<f64>,
    /// Quantum of action [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// key = value file with defaults for any flag; flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Highest quantum number [default: 10]
    #[arg(long)]
    pub n_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVar {
    HalfWidth,
    WellDepth,
}

impl std::str::FromStr for SweepVar {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Parameter to vary
    #[arg(long, value_enum)]
    pub sweep_var: Option<SweepVar>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    /// Number of equally spaced points, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,
    /// Quantum number followed along the sweep [default: 1]
    #[arg(long)]
    pub level: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    FpLimit,
    HoLimit,
    Semiclassical,
    Perturbation,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Highest quantum number [default: 5]
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Series order for the limit methods [default: 2 for fp-limit, 3 for ho-limit]
    #[arg(long)]
    pub order: Option<u8>,
}

#[derive(Args, Debug, Clone)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Interior points of the base grid [default: 4000]
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Number of lowest levels checked [default: 5]
    #[arg(long)]
    pub levels: Option<usize>,
    /// Successively halved grids used for extrapolation, 1 to 3 [default: 3]
    #[arg(long)]
    pub richardson: Option<u8>,
    /// Relative tolerance on eigenvalues [default: 1e-6]
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Relative tolerance on closed-form pressure vs -dE/dL of the closed form [default: 1e-8]
    #[arg(long)]
    pub pressure_tolerance: Option<f64>,
    /// Relative tolerance on closed-form pressure vs -dE/dL of the eigenvalues [default: 1e-5]
    #[arg(long)]
    pub eigen_pressure_tolerance: Option<f64>,
}

fn load_config(common: &CommonArgs) -> Result<ConfigFile, CliError> {
    match &common.config {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::default()),
    }
}

fn merge_common(common: &mut CommonArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    merge(&mut common.mass, cfg, "mass")?;
    merge(&mut common.well_depth, cfg, "well-depth")?;
    merge(&mut common.half_width, cfg, "half-width")?;
    merge(&mut common.hbar, cfg, "hbar")?;
    if common.format.is_none() {
        common.format = cfg
            .get::<String>("format")?
            .map(|s| {
                <Format as clap::ValueEnum>::from_str(&s, true).map_err(|_| {
                    CliError::Usage(format!("config key 'format': invalid value '{s}'"))
                })
            })
            .transpose()?;
    }
    merge(&mut common.output, cfg, "output")?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(mut a) => {
            let cfg = load_config(&a.common)?;
            merge_common(&mut a.common, &cfg)?;
            merge(&mut a.n_max, &cfg, "n-max")?;
            commands::spectrum(&a)
        }
        Command::Sweep(mut a) => {
            let cfg = load_config(&a.common)?;
            merge_common(&mut a.common, &cfg)?;
            merge(&mut a.sweep_var, &cfg, "sweep-var")?;
            merge(&mut a.from, &cfg, "from")?;
            merge(&mut a.to, &cfg, "to")?;
            merge(&mut a.steps, &cfg, "steps")?;
            merge(&mut a.level, &cfg, "level")?;
            commands::sweep(&a)
        }
        Command::Compare(mut a) => {
            let cfg = load_config(&a.common)?;
            merge_common(&mut a.common, &cfg)?;
            merge(&mut a.method, &cfg, "method")?;
            merge(&mut a.n_max, &cfg, "n-max")?;
            merge(&mut a.order, &cfg, "order")?;
            commands::compare(&a)
        }
        Command::Validate(mut a) => {
            let cfg = load_config(&a.common)?;
            merge_common(&mut a.common, &cfg)?;
            merge(&mut a.grid_n, &cfg, "grid-n")?;
            merge(&mut a.levels, &cfg, "levels")?;
            merge(&mut a.richardson, &cfg, "richardson")?;
            merge(&mut a.tolerance, &cfg, "tolerance")?;
            merge(&mut a.pressure_tolerance, &cfg, "pressure-tolerance")?;
            merge(
                &mut a.eigen_pressure_tolerance,
                &cfg,
                "eigen-pressure-tolerance",
            )?;
            commands::validate(&a)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pto: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
