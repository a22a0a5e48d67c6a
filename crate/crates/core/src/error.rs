use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("point outside the chart domain: {0}")]
    Domain(String),

    #[error("degenerate metric (|det g| = {det:e}) at {point:?}")]
    DegenerateMetric { det: f64, point: Vec<f64> },

    #[error("ambient pullback divides by kappa1; use the polar metric when kappa1 = 0")]
    FlatCase,

    #[error("conformal factor is singular at r = {0}")]
    ConformalSingularity(f64),

    #[error(
        "degenerate signature (lambda2^2 = 0): Newtonian metrics have no geodesic Hamiltonian"
    )]
    DegenerateSignature,

    #[error("implicit midpoint iteration did not converge at t = {time} (residual {residual:e})")]
    NonConvergence { time: f64, residual: f64 },

    #[error("trajectory left the domain at t = {time} after {steps} steps")]
    LeftDomain { time: f64, steps: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
