//! Numeric geometry of the Cayley-Klein family.
//!
//! The crate covers four layers that build on one another:
//!
//! - [`algebra`]: the κ-parametrized orthogonal algebras `so_κ(N+1)`, their
//!   involutions, Inönü-Wigner contractions, Cartan-like decompositions and
//!   vector representation.
//! - [`space`]: the rank-one homogeneous spaces `S^N_[κ1]κ2` (sphere,
//!   hyperbolic, (anti-)de Sitter, Newton-Hooke, ...) in ambient and geodesic
//!   polar form.
//! - [`riemann`]: a finite-difference curvature engine that works on any
//!   [`MetricField`], plus an implicit-midpoint geodesic integrator.
//! - [`deform`]: the non-standard sl(2) Poisson coalgebra, its n-site
//!   symplectic realizations and the non-constant curvature spaces it induces.
//!
//! Batch work (sign sweeps, point sampling, trajectory ensembles) goes
//! through [`exec`], which uses rayon when the `parallel` feature is on.

pub mod algebra;
pub mod deform;
mod error;
pub mod exec;
pub mod metric;
pub mod riemann;
pub mod space;
pub mod trig;

pub use error::{Error, Result};
pub use exec::Execution;
pub use metric::MetricField;

/// Version tag written into every JSON document this crate emits.
pub const SCHEMA: &str = "ckgeo/1";
