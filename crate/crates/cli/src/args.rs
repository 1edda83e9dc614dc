use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "lateral-vdw", version, about = "Lateral electrostatic and van der Waals forces near corrugated dielectrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeroth- and first-order energy at one particle position
    Energy(EnergyArgs),
    /// Peak/valley/intermediate labels over a two-parameter grid
    Atlas(AtlasArgs),
    /// Kernel sign changes and the named regime constants, or kernel curves
    Thresholds(ThresholdsArgs),
    /// Minimum position versus dipole tilt
    Intermediate(IntermediateArgs),
    /// Re-derive kernels and energies by brute force and compare
    Verify(VerifyArgs),
    /// Run a JSON job file (one job or an array of jobs)
    Job(JobArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Classical,
    Vdw,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("particle").required(true).args(["dipole", "correlation", "uniaxial"])))]
pub struct EnergyArgs {
    /// Permittivity of the corrugated medium below the interface
    #[arg(long, allow_hyphen_values = true)]
    pub eps1: f64,
    /// Permittivity of the medium holding the particle
    #[arg(long, allow_hyphen_values = true)]
    pub eps2: f64,
    /// `a,lambda` for h = a cos(2π x/λ), or a JSON profile file
    #[arg(long, allow_hyphen_values = true)]
    pub profile: String,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub y0: f64,
    /// Defaults to classical for --dipole and vdw otherwise
    #[arg(long, value_enum)]
    pub channel: Option<ChannelArg>,
    /// Permanent dipole `|d|,theta,phi`
    #[arg(long, allow_hyphen_values = true)]
    pub dipole: Option<String>,
    /// JSON file with a 3x3 correlation tensor, or polarizability samples
    #[arg(long)]
    pub correlation: Option<PathBuf>,
    /// Uniaxial correlation `dp2,dn2,theta,phi`
    #[arg(long, allow_hyphen_values = true)]
    pub uniaxial: Option<String>,
    /// Accept a/z0 above the perturbative limit of 0.1
    #[arg(long)]
    pub force: bool,
    /// Report energies in joules (dipole in C·m, lengths in m)
    #[arg(long)]
    pub si: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AtlasArgs {
    /// Named figure preset (fig5a-i, fig6a-c, fig9, fig10a-d)
    #[arg(long, conflicts_with_all = ["x_axis", "y_axis"])]
    pub preset: Option<String>,
    /// `kind,min,max,n` with kind one of lambda_over_z0, ratio, phi
    #[arg(long, requires = "y_axis", allow_hyphen_values = true)]
    pub x_axis: Option<String>,
    #[arg(long, requires = "x_axis", allow_hyphen_values = true)]
    pub y_axis: Option<String>,
    /// eps2/eps1 when not swept
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    #[arg(long, default_value_t = 2.0)]
    pub lambda_over_z0: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// classical, isotropic, or uniaxial[:transverse_ratio]
    #[arg(long, default_value = "classical")]
    pub particle: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ThresholdsArgs {
    /// fig2 or fig3 for tabulated kernel curves instead of the constants table
    #[arg(long)]
    pub preset: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IntermediateArgs {
    /// fig8a or fig8b
    #[arg(long, conflicts_with = "ratio")]
    pub preset: Option<String>,
    /// One or more eps2/eps1 values, comma separated
    #[arg(long, value_delimiter = ',', required_unless_present = "preset")]
    pub ratio: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub lambda_over_z0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 721)]
    pub n_theta: usize,
    #[arg(long, default_value = "classical")]
    pub particle: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Kernels plus a single finite-difference configuration
    #[arg(long)]
    pub quick: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    pub path: PathBuf,
}
