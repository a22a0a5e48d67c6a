//! The non-standard deformation of sl(2) and the curved spaces it induces.
//!
//! A deformation parameter `z` turns the flat kinetic energy `½p²` into the
//! geodesic Hamiltonian of a conformally-CK metric of non-constant curvature;
//! `λ₂²` selects the signature (Riemannian, Lorentzian or degenerate) and a
//! profile `f` chooses the member of the family.

mod dynamics;
mod metric;
mod params;
mod polar;
mod realization;

pub use dynamics::{
    cartesian_kinetic, cartesian_to_polar_momenta, casimirs, geodesic_hamiltonian,
    invariant_jacobian, invariants, numeric_rank, polar_to_cartesian_phase, state_invariants,
    GeodesicHamiltonian, Invariants, CHART_MARGIN,
};
pub use metric::{
    cartesian_curvature_closed_form, conformal_factor, deformed_metric_cartesian,
    deformed_metric_polar, polar_curvature_closed_form, scalar_curvature_formula,
};
pub use params::{classify_deformed, deformed_space_name, DeformationParams, Profile};
pub use polar::{
    chart_margin, inverse_jacobian, polar_change, polar_change_inverse, polar_jacobian,
    pullback_to_polar,
};
pub use realization::{
    bracket_residuals, canonical_poisson, canonical_poisson_with, casimir, casimir_of,
    casimir_signed, casimir_two_site_closed_form, realization, realization_signed, site_prefactors,
    BracketResiduals, GeneratorTriple, PhasePoint,
};

use crate::exec::{map_slice, Execution};

/// Bracket and Casimir residuals at many points.
pub fn bracket_suite(z: f64, points: &[PhasePoint], exec: Execution) -> Vec<BracketResiduals> {
    map_slice(points, exec, |p| bracket_residuals(z, p))
}
