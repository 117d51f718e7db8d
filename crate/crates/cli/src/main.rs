//! `jetlab` command-line front end.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetlab::geometry::GeometryError;
use jetlab::germ::GermParseError;
use jetlab::{BoundsError, JetError, NevanlinnaError, ParseError, WronskianError};

/// Exit codes: 0 success, 1 failed check, 2 usage, 3 hypothesis violation,
/// 4 numerical non-convergence.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError { code: 2, message: m.into() }
    }

    pub fn input(m: impl Into<String>) -> Self {
        CliError { code: 2, message: format!("input: {}", m.into()) }
    }

    pub fn hypothesis(m: impl Into<String>) -> Self {
        CliError { code: 3, message: m.into() }
    }
}

impl From<NevanlinnaError> for CliError {
    fn from(e: NevanlinnaError) -> Self {
        let message = format!("nevanlinna: {e}");
        let code = match e {
            NevanlinnaError::Domain(_) => 2,
            NevanlinnaError::Containment => {
                return CliError::hypothesis(format!(
                    "{message}; the First Main Theorem needs f(Δ) not contained in D"
                ))
            }
            NevanlinnaError::SingularCircle { .. } | NevanlinnaError::Pole { .. } => 3,
            NevanlinnaError::Quadrature(_) => 4,
        };
        CliError { code, message }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Nevanlinna(n) => n.into(),
            GeometryError::Domain(_) | GeometryError::Parse(_) => CliError::usage(format!("geometry: {e}")),
            GeometryError::NotConformal(_) => CliError::hypothesis(format!("geometry: {e}")),
            GeometryError::Quadrature(_) => CliError { code: 4, message: format!("geometry: {e}") },
        }
    }
}

impl From<WronskianError> for CliError {
    fn from(e: WronskianError) -> Self {
        match e {
            WronskianError::InvalidArrangement | WronskianError::DependentSubfamily(_) => {
                CliError::hypothesis(format!("wronskian: {e}"))
            }
            _ => CliError::usage(format!("wronskian: {e}")),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::usage(format!("bounds: {e}"))
    }
}

impl From<JetError> for CliError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::Pole { .. } => CliError::hypothesis(format!("jet: {e}")),
            _ => CliError::usage(format!("jet: {e}")),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::usage(format!("parse: {e}"))
    }
}

impl From<GermParseError> for CliError {
    fn from(e: GermParseError) -> Self {
        CliError::usage(format!("germ: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "jetlab", version, about = "Jet differentials, Wronskians and Nevanlinna sweeps")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit JSON instead of CSV or text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Tolerance: quadrature tolerance for sweeps, pass threshold for checks.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tol: Option<f64>,
    /// Radius grid `a:b:steps`, `steps` equally spaced points from `a` to `b`.
    #[arg(long, global = true, value_name = "a:b:steps")]
    pub grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree-bound table `n,k,k',delta,r0,threshold,stated_bound,ok`.
    Bounds(BoundsCmd),
    /// Faà di Bruno expansion of `d^j log z_i` (or its inverse).
    Faa(FaaCmd),
    /// Exact value of a jet polynomial along germs.
    JetEval(JetEvalCmd),
    /// Weight, vanishing order and general position of a Wronskian.
    Wronskian(WronskianCmd),
    /// First Main Theorem sweep `r,m,N,T,defect`.
    FmtCheck(FmtCmd),
    /// Transcendence ratios `T_f(r)/log(1/(1−r))`.
    Transcendence(TranscendenceCmd),
    /// Logarithmic derivative ratios.
    Ldl(LdlCmd),
    /// Conformality, constancy and holomorphy of a Gauss map.
    Gauss(GaussCmd),
    /// Area density at a point, or partial integrals of `h^p dσ`.
    Area(AreaCmd),
    /// Partial integrals of `r(1−r)^{−a}(log 1/(1−r))^a`.
    ProofIntegral(ProofIntegralCmd),
    /// Normalized circle integrals of the Wronskian jet norm.
    JetNormIntegral(JetNormCmd),
}

#[derive(Debug, Args)]
pub struct BoundsCmd {
    /// Dimension `n` or inclusive range `a..b`.
    #[arg(long)]
    pub n: String,
    /// Decompose this degree and report twist ratios (single `n` only).
    #[arg(long)]
    pub degree: Option<String>,
    /// Largest `α` in the twist grid `1..=alpha_max`.
    #[arg(long, default_value_t = 8)]
    pub alpha_max: u32,
}

#[derive(Debug, Args)]
pub struct FaaCmd {
    /// Order `j` or inclusive range `a..b`.
    #[arg(long)]
    pub order: String,
    /// Variable index.
    #[arg(long, default_value_t = 1)]
    pub var: usize,
    /// Expand `(d^j z_i)/z_i` through `d^s log z_i` instead.
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Args)]
pub struct JetEvalCmd {
    /// Jet polynomial, e.g. `3*(dlog[1]^2)*(d[2]^1)^2`.
    #[arg(long)]
    pub poly: String,
    /// Germ of variable `i`, in order: `1 + 2*z - z^3`, `exp(z)`, `1/(1-z)`.
    #[arg(long = "germ", required = true)]
    pub germs: Vec<String>,
    /// Evaluation point, an exact complex rational such as `1/4+1/8*I`.
    #[arg(long, default_value = "0")]
    pub at: String,
    /// Jet order; defaults to the highest order in the polynomial.
    #[arg(long)]
    pub order: Option<u32>,
    /// Series truncation of the germs; defaults to `2·order + 4`.
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WronskianCmd {
    /// Arrangement JSON.
    #[arg(long)]
    pub file: PathBuf,
    /// 1-based hyperplane indices for the local logarithmic form, e.g. `1,3`.
    #[arg(long, value_delimiter = ',')]
    pub index_set: Option<Vec<usize>>,
    /// Jet order of the differential.
    #[arg(long)]
    pub jet_order: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FmtCmd {
    /// Curve JSON.
    #[arg(long)]
    pub curve: PathBuf,
    /// Hypersurface JSON.
    #[arg(long)]
    pub hypersurface: PathBuf,
}

#[derive(Debug, Args)]
pub struct TranscendenceCmd {
    /// Curve JSON.
    #[arg(long, conflicts_with = "germs")]
    pub curve: Option<PathBuf>,
    /// Germ components instead of a polynomial curve.
    #[arg(long = "germ")]
    pub germs: Vec<String>,
    /// Series truncation for germ components.
    #[arg(long, default_value_t = 40)]
    pub truncation: usize,
}

#[derive(Debug, Args)]
pub struct LdlCmd {
    /// Nowhere-zero function: `exp(P)` or a rational function; repeat for products.
    #[arg(long = "phi", required = true)]
    pub phis: Vec<String>,
    /// Derivative order `λ ≥ 1`, one per `--phi`.
    #[arg(long = "lambda")]
    pub lambdas: Vec<u32>,
    /// Exponent `t` of the product estimate, with `t·#φ < 1`.
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SurfaceSource {
    /// Named preset: plane, enneper, catenoid.
    #[arg(long, conflicts_with_all = ["surface", "f"])]
    pub preset: Option<String>,
    /// Surface JSON.
    #[arg(long, conflicts_with = "f")]
    pub surface: Option<PathBuf>,
    /// Weierstrass `F`, with `--g`.
    #[arg(long, requires = "g")]
    pub f: Option<String>,
    /// Weierstrass `G`, with `--f`.
    #[arg(long, requires = "f")]
    pub g: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum GaussCheck {
    Conformality,
    Constant,
    Holomorphy,
}

#[derive(Debug, Args)]
pub struct GaussCmd {
    #[command(flatten)]
    pub source: SurfaceSource,
    /// Checks to run; all by default.
    #[arg(long = "check", value_enum)]
    pub checks: Vec<GaussCheck>,
    /// Conjugate this component (0-based) as a negative control.
    #[arg(long)]
    pub conjugate: Option<usize>,
    /// Radius of the sample ring.
    #[arg(long, default_value_t = 0.3)]
    pub radius: f64,
    /// Number of samples on the ring.
    #[arg(long, default_value_t = 16)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Euclidean,
    Max,
}

#[derive(Debug, Args)]
pub struct AreaCmd {
    #[command(flatten)]
    pub source: SurfaceSource,
    /// Report the density at this point instead of running the sweep.
    #[arg(long)]
    pub at: Option<String>,
    /// Exponent `p > 0`.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Weight `h`: `constant`, `inverse-pole` or `modulus:POLY`.
    #[arg(long, default_value = "constant")]
    pub model: String,
    #[arg(long, value_enum, default_value_t = NormArg::Euclidean)]
    pub norm: NormArg,
}

#[derive(Debug, Args)]
pub struct ProofIntegralCmd {
    /// Exponent `a = 2m/m̃`.
    #[arg(long, conflicts_with_all = ["weight", "vanishing_order"])]
    pub ratio: Option<f64>,
    /// Weight `m`, with `--vanishing-order`.
    #[arg(long, requires = "vanishing_order")]
    pub weight: Option<u32>,
    /// Vanishing order `m̃`, with `--weight`.
    #[arg(long, requires = "weight")]
    pub vanishing_order: Option<u32>,
    /// Number of cut-offs `ε = 10^{-1}, …, 10^{-count}`.
    #[arg(long, default_value_t = 12)]
    pub eps_count: i32,
}

#[derive(Debug, Args)]
pub struct JetNormCmd {
    /// Arrangement JSON.
    #[arg(long)]
    pub file: PathBuf,
    /// Curve JSON.
    #[arg(long)]
    pub curve: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            if let Err(e) = output::emit(&cli.global, &report.text, &report.json) {
                eprintln!("jetlab: {}", e.message);
                return ExitCode::from(e.code);
            }
            for note in &report.notes {
                eprintln!("jetlab: {note}");
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("jetlab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
