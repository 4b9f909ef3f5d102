use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wulff_core::error::{Error, Result};
use wulff_core::integrand::{fixtures, load, Integrand};

/// Curve sample count bounds.
pub const GRID_RANGE: (usize, usize) = (1 << 8, 1 << 14);
/// Icosphere level bounds when the integrand lives on S².
pub const LEVEL_RANGE: (usize, usize) = (1, 6);
pub const TOL_RANGE: (f64, f64) = (1e-12, 1e-2);

pub const DEFAULT_CURVE_GRID: usize = 1024;
pub const DEFAULT_LEVEL: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "wulff",
    version,
    about = "Wulff shapes, dual convex integrands and their spherical geometry"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convexity, strict convexity and stability of an integrand.
    Check(Common),
    /// Dual integrand samples, both Wulff shapes and the involution residual.
    Dual(Common),
    /// Run every verification suite.
    Verify(Common),
    /// Wave fronts of the lifted boundary.
    Front(Common),
    /// Spherical caustic and symmetry set of the lifted boundary.
    Caustic(Common),
    /// Polar set and spherical convex hull of a point set on S².
    Polar(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Integrand spec file, or builtin:<name> for a built-in fixture.
    #[arg(long)]
    pub integrand: Option<String>,
    /// CSV of points on S² (one x,y,z row each).
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Output sample count for curves, icosphere level for surfaces.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Comparison tolerance applied to the verdicts of the command.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated wave-front parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    #[arg(long, default_value = "wulff-out")]
    pub out: PathBuf,
    /// Comma-separated subset of csv, svg, obj.
    #[arg(long, value_delimiter = ',')]
    pub format: Option<Vec<Format>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Obj,
}

/// Validated options shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub integrand: Option<String>,
    pub points: Option<PathBuf>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl RunConfig {
    pub fn from_args(c: Common) -> Result<Self> {
        if let Some(tol) = c.tol {
            if !(TOL_RANGE.0..=TOL_RANGE.1).contains(&tol) {
                return Err(Error::InvalidArgument(format!(
                    "--tol {tol:e} outside [{:e}, {:e}]",
                    TOL_RANGE.0, TOL_RANGE.1
                )));
            }
        }
        if let Some(ts) = &c.t {
            if let Some(&bad) = ts.iter().find(|t| !t.is_finite()) {
                return Err(Error::InvalidArgument(format!("--t value {bad} is not finite")));
            }
        }
        Ok(RunConfig {
            integrand: c.integrand,
            points: c.points,
            grid: c.grid,
            tol: c.tol,
            t: c.t,
            out: c.out,
            formats: c.format.unwrap_or_else(|| vec![Format::Csv, Format::Svg, Format::Obj]),
        })
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    pub fn load_integrand(&self) -> Result<Integrand> {
        let src = self
            .integrand
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--integrand is required".into()))?;
        match src.strip_prefix("builtin:") {
            Some(name) => fixtures::by_name(name),
            None => load(std::path::Path::new(src)),
        }
    }

    /// Sample count (n = 1) or icosphere level (n = 2) after bounds checks.
    pub fn grid_for(&self, n: usize) -> Result<usize> {
        let (range, default) = if n == 1 {
            (GRID_RANGE, DEFAULT_CURVE_GRID)
        } else {
            (LEVEL_RANGE, DEFAULT_LEVEL)
        };
        let g = self.grid.unwrap_or(default);
        if !(range.0..=range.1).contains(&g) {
            return Err(Error::InvalidArgument(format!(
                "--grid {g} outside [{}, {}] for n = {n}",
                range.0, range.1
            )));
        }
        Ok(g)
    }

    pub fn ensure_out(&self) -> Result<()> {
        std::fs::create_dir_all(&self.out).map_err(|source| Error::Io {
            path: self.out.clone(),
            source,
        })
    }
}
