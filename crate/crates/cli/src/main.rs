use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

mod commands;
mod settings;

use settings::Settings;

/// Decide minimality of equatorial hypercones in singular cones, and run
/// the underlying computations.
#[derive(Parser)]
#[command(name = "cone-min-lab", version)]
struct Cli {
    /// JSON file supplying any global flag; flags on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every (n, λ) on the grid and write the records.
    Scan,
    /// Integrate the Euler-Lagrange equation in the angle variable.
    Shoot {
        /// Initial angle; without it, bisect for a shot reaching pi/2.
        #[arg(long)]
        h0: Option<f64>,
        /// Also dump `theta H f` columns here.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Best exponential competitor, or the one at a given (δ, α).
    Competitor {
        #[arg(long, requires = "alpha")]
        delta: Option<f64>,
        #[arg(long, requires = "delta")]
        alpha: Option<f64>,
        /// Confirm the bound by quadrature.
        #[arg(long)]
        numeric: bool,
    },
    /// Instability certificates for 2-dimensional cones, over the λ grid.
    Stability {
        /// Also report the gap at this ln(R/ε).
        #[arg(long)]
        ln_ratio: Option<f64>,
    },
    /// Sectional and Ricci curvatures of the cone.
    Curvature {
        /// Distances from the vertex.
        #[arg(long, default_value = "0.1,1,10")]
        t: String,
    },
    /// Density ratios across radii.
    Monotonicity {
        #[arg(long, default_value = "0.1,1,10")]
        radii: String,
        /// Use a Euclidean catenoid with this neck radius instead of cones.
        #[arg(long)]
        catenoid_neck: Option<f64>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let settings = match cli.config {
        Some(path) => cli.settings.over(Settings::load(&path)?),
        None => cli.settings,
    };
    match cli.command {
        Command::Scan => commands::run_scan(&settings),
        Command::Shoot { h0, trajectory } => {
            commands::run_shoot(&settings, h0, trajectory.as_deref())
        }
        Command::Competitor {
            delta,
            alpha,
            numeric,
        } => commands::run_competitor(&settings, delta.zip(alpha), numeric),
        Command::Stability { ln_ratio } => commands::run_stability(&settings, ln_ratio),
        Command::Curvature { t } => commands::run_curvature(&settings, &t),
        Command::Monotonicity {
            radii,
            catenoid_neck,
        } => commands::run_monotonicity(&settings, &radii, catenoid_neck),
    }
}
