pub mod algebra;
pub mod contract;
pub mod curvature;
pub mod geodesic;
pub mod tables;

use ckgeo::algebra::CkSignature;
use ckgeo::deform::{DeformationParams, Profile};
use ckgeo::riemann::Integrator;
use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Args, Serialize)]
pub struct AlgebraArgs {
    /// Dimension N of so_κ(N+1).
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// Comma-separated κ_1..κ_N (default: all 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Option<Vec<f64>>,

    /// Check every κ in {-1, 0, 1}^N instead of a single algebra.
    #[arg(long)]
    pub sweep_signs: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct Table2Args {
    /// Random points per non-degenerate row for the numeric check.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct Table3Args {
    /// Magnitude of the deformation parameter; rows use z = +|z|, 0, -|z|.
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,

    /// Geodesic radius of the evaluation point.
    #[arg(long, default_value_t = 0.7)]
    pub r: f64,

    /// Polar angle (rapidity for Lorentzian rows).
    #[arg(long, default_value_t = 0.9)]
    pub theta: f64,

    /// Azimuth.
    #[arg(long, default_value_t = 0.6)]
    pub phi: f64,

    /// Profile: one, ck, exp or poly2.
    #[arg(long, default_value = "one")]
    pub profile: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    /// Constant-curvature space in geodesic polar coordinates.
    Ck,
    /// Deformed space in geodesic polar coordinates.
    DeformedPolar,
    /// Deformed space in Cartesian realization coordinates.
    DeformedCartesian,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct CurvatureArgs {
    #[arg(long, value_enum, default_value_t = MetricKind::Ck)]
    pub kind: MetricKind,

    /// κ_1 of a constant-curvature space.
    #[arg(long, default_value_t = 1.0)]
    pub kappa1: f64,

    /// κ_2 of a constant-curvature space.
    #[arg(long, default_value_t = 1.0)]
    pub kappa2: f64,

    /// Deformation parameter of a deformed space.
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,

    /// Signature parameter λ₂² of a deformed space.
    #[arg(long, default_value_t = 1.0)]
    pub lambda2_sq: f64,

    /// Profile: one, ck, exp or poly2.
    #[arg(long, default_value = "one")]
    pub profile: String,

    /// Comma-separated point; random points are drawn when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,

    /// Number of random points.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegratorArg {
    /// Implicit midpoint (second order).
    Midpoint,
    /// Triple-jump composition of midpoint steps (fourth order).
    Yoshida4,
}

impl From<IntegratorArg> for Integrator {
    fn from(a: IntegratorArg) -> Self {
        match a {
            IntegratorArg::Midpoint => Integrator::ImplicitMidpoint,
            IntegratorArg::Yoshida4 => Integrator::Yoshida4,
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct GeodesicArgs {
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,

    #[arg(long, default_value_t = 1.0)]
    pub lambda2_sq: f64,

    /// Profile: one, ck, exp or poly2.
    #[arg(long, default_value = "one")]
    pub profile: String,

    /// Initial polar point r,theta,phi.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0.8,1.0,0.5"
    )]
    pub y: Vec<f64>,

    /// Initial polar momenta p_r,p_theta,p_phi.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0.05,0.03,0.02"
    )]
    pub p: Vec<f64>,

    /// Draw the initial point and momenta from the seeded generator instead.
    #[arg(long)]
    pub random_start: bool,

    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,

    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = IntegratorArg::Midpoint)]
    pub integrator: IntegratorArg,

    /// Write every k-th state.
    #[arg(long, default_value_t = 1)]
    pub every: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ContractArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// Comma-separated κ_1..κ_N (default: all 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Option<Vec<f64>>,

    /// Index of the contracted coefficient κ_m.
    #[arg(long, default_value_t = 1)]
    pub m: usize,

    /// Number of ε values, log-spaced from 1 down to --min-eps.
    #[arg(long, default_value_t = 13)]
    pub points: usize,

    #[arg(long, default_value_t = 1e-6)]
    pub min_eps: f64,
}

pub fn signature(n: usize, kappa: Option<&[f64]>) -> CliResult<CkSignature> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    match kappa {
        None => Ok(CkSignature::compact(n)),
        Some(k) if k.len() != n => Err(CliError::Usage(format!(
            "--kappa has {} entries, --n is {n}",
            k.len()
        ))),
        Some(k) => Ok(CkSignature::new(k.to_vec())?),
    }
}

pub fn deformation(z: f64, lambda2_sq: f64, profile: &str) -> CliResult<DeformationParams> {
    Ok(DeformationParams::new(
        z,
        lambda2_sq,
        Profile::by_name(profile)?,
    )?)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
