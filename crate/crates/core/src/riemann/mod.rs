//! Curvature of arbitrary metric fields and Hamiltonian geodesic flow.
//!
//! Everything here works on a [`MetricField`](crate::MetricField) or a
//! [`Hamiltonian`] and differentiates numerically, so metrics built from
//! user-supplied profile functions need no extra derivative information.

mod curvature;
mod fd;
mod flow;

pub use curvature::{
    christoffel, christoffel_with, curvature, curvature_batch, curvature_with, riemann_tensor,
    riemann_tensor_with, Christoffel, CurvatureMethod, CurvatureReport, RiemannTensor,
    SectionalCurvature, NULL_PLANE_THRESHOLD,
};
pub use fd::{FiniteDifference, StepRule};
pub use flow::{
    flow_until_failure, geodesic_flow, trajectory_csv, Column, FlowConfig, FlowOutcome, FlowState,
    FnHamiltonian, Hamiltonian, Integrator,
};
