//! Orthogonal Cayley-Klein algebras `so_κ(N+1)`.
//!
//! Generators `J_ab` (0 ≤ a < b ≤ N) are ordered lexicographically. All
//! brackets are polynomial in κ, so for integer κ every check here runs in
//! exact f64 arithmetic.

mod classify;
mod decomposition;
mod representation;
mod signature;
mod structure;
mod sweep;

pub use classify::classify_algebra;
pub use decomposition::{
    cartan_decompose, contract_gamma, involution_theta, space_report, CartanDecomposition,
    SpaceReport,
};
pub use representation::{one_parameter_subgroup, vector_representation, MatrixRep};
pub use signature::{two_index_kappa, CkSignature, GeneratorIndex};
pub use structure::{build_structure_constants, jacobi_residual, StructureConstants, Term};
pub use sweep::{all_sign_vectors, sweep_signs, SweepRow};
