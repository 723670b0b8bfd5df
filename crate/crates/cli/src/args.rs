use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tessella_core::CycleMode;

#[derive(Debug, Parser)]
#[command(name = "tessella", version, about = "Check face-pairings of polyhedra against the hypotheses of the polyhedron theorem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every hypothesis and print the verification report.
    Verify(Common),
    /// Print the cycles of edges with lengths, multiplicities and residuals.
    Cycles(Common),
    /// Develop translates of the polyhedron and check overlap and covering.
    Develop(DevelopArgs),
    /// Print the group presentation read off the face-pairing.
    Presentation(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input document (JSON).
    pub file: PathBuf,
    /// Isometry tolerance, default 1e-8.
    #[arg(long)]
    pub tol_iso: Option<f64>,
    /// Membership tolerance, default 1e-9.
    #[arg(long)]
    pub tol_mem: Option<f64>,
    /// Angle tolerance in radians, default 1e-6.
    #[arg(long)]
    pub tol_ang: Option<f64>,
    /// Sample count per face, edge and check.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Cycle multiplicity mode: strict or remark31.
    #[arg(long)]
    pub mode: Option<CycleMode>,
    /// Print the machine-readable JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DevelopArgs {
    #[command(flatten)]
    pub common: Common,
    /// Maximal word length.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Write an SVG drawing of the translates (dimension 2 only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// SVG chart: euclidean-plane, klein-disk or poincare-disk.
    #[arg(long)]
    pub chart: Option<String>,
    /// Covering ball center, comma-separated model coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    /// Covering ball radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Develop even if verification does not pass.
    #[arg(long = "unsafe")]
    pub force: bool,
}
