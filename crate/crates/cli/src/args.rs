use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bpint", version, about = "Integrals of products of Bessel functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report convergence, polygonal constraint, charge neutrality and the vanishing prediction.
    Check(SpecArgs),
    /// Evaluate one integral.
    Eval(EvalArgs),
    /// Evaluate a one-parameter family and write CSV.
    Sweep(SweepArgs),
    /// Density of states of a hypercubic tight-binding lattice.
    Dos(DosArgs),
    /// Conductivity along one axis.
    Conductivity(ConductivityArgs),
    /// Angular delta-function oracle for a scattering geometry.
    Scatter(ScatterArgs),
    /// Power law of the scattering rate just below threshold.
    Threshold(ThresholdArgs),
    /// Locate derivative discontinuities in a sweep CSV.
    Kinks(KinksArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Power in the integrand rho^(alpha-1) prod J_nu(c rho).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Bessel orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub nu: Vec<f64>,
    /// Coefficients, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    /// Oscillatory quadrature (asymptotic tail).
    Quad,
    /// Oscillatory quadrature, damped-integral extrapolation.
    Regularized,
    /// Closed form; only where the polygonal constraint is violated.
    Exton,
    /// Angular delta-function representation.
    Oracle,
    /// Closed form where it applies, quadrature otherwise.
    Auto,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: EvalMethod,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// JSON sweep configuration.
    #[arg(long, conflicts_with_all = ["subject", "param", "start", "stop", "step", "set"])]
    pub config: Option<PathBuf>,
    /// integral, trig, dos, conductivity, scatter2d, scatter3d, umklapp_f or threshold.
    #[arg(long)]
    pub subject: Option<String>,
    /// Name of the swept parameter.
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Fixed parameter as key=value; lists are comma separated.
    #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    pub set: Vec<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Overrides the configuration's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the configuration's output path; stdout when absent from both.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DosArgs {
    /// Hoppings, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    /// Lattice constants (default all 1).
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Use the square-lattice elliptic closed form (two equal hoppings).
    #[arg(long)]
    pub closed: bool,
    /// With --closed: the uncorrected prefactor, 2 pi times larger.
    #[arg(long, requires = "closed")]
    pub printed: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ConductivityArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    /// Axis index, starting at 0.
    #[arg(long, default_value_t = 0)]
    pub axis: usize,
    #[arg(long = "ef", allow_hyphen_values = true)]
    pub fermi_energy: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Quasi-random points per shift.
    #[arg(long, default_value_t = 1 << 14)]
    pub points: usize,
    #[arg(long, default_value_t = 16)]
    pub shifts: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value_t = 1 << 18)]
    pub mc_samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: u8,
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
    #[arg(long)]
    pub g: f64,
    /// unit, R1, R2 or R3.
    #[arg(long, default_value = "unit")]
    pub weight: String,
    #[arg(long = "phi-dk", allow_hyphen_values = true)]
    pub phi_dk: Option<f64>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: u8,
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
    #[arg(long = "eps-min", default_value_t = 1e-3)]
    pub eps_min: f64,
    #[arg(long = "eps-max", default_value_t = 1e-1)]
    pub eps_max: f64,
    /// Log-spaced slacks in the window.
    #[arg(long, default_value_t = 12)]
    pub count: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KinksArgs {
    /// Sweep CSV (`param,value,...`, `#` comments ignored).
    #[arg(long)]
    pub input: PathBuf,
}
