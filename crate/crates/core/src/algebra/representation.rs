use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::signature::{two_index_kappa, CkSignature, GeneratorIndex};
use super::structure::StructureConstants;
use crate::trig::{ck_cos, ck_sin};
use crate::Result;

/// `(N+1)×(N+1)` vector representation `J_ab = −κ_ab e_ab + e_ba`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    pub matrices: BTreeMap<GeneratorIndex, DMatrix<f64>>,
    /// `𝕀_κ = diag(1, κ_01, κ_02, …, κ_0N)`, the invariant quadratic form.
    pub ik_matrix: DMatrix<f64>,
}

pub fn vector_representation(sig: &CkSignature) -> MatrixRep {
    let dim = sig.n() + 1;
    let matrices = sig
        .generators()
        .into_iter()
        .map(|g| {
            let mut m = DMatrix::zeros(dim, dim);
            m[(g.a, g.b)] = -two_index_kappa(sig, g.a, g.b).expect("valid generator");
            m[(g.b, g.a)] = 1.0;
            (g, m)
        })
        .collect();
    let diag: Vec<f64> = (0..dim)
        .map(|b| {
            if b == 0 {
                1.0
            } else {
                two_index_kappa(sig, 0, b).expect("b ≤ n")
            }
        })
        .collect();
    MatrixRep {
        matrices,
        ik_matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
    }
}

impl MatrixRep {
    /// Max entry of `Xᵀ𝕀_κ + 𝕀_κX` over all generators.
    pub fn form_defect(&self) -> f64 {
        self.matrices
            .values()
            .map(|x| (x.transpose() * &self.ik_matrix + &self.ik_matrix * x).amax())
            .fold(0.0, f64::max)
    }

    /// Max entry of `[X, Y] − Σ c J_t` over all generator pairs.
    pub fn bracket_defect(&self, sc: &StructureConstants) -> f64 {
        let gens: Vec<_> = self.matrices.keys().copied().collect();
        let mut worst = 0.0f64;
        for &x in &gens {
            for &y in &gens {
                let (mx, my) = (&self.matrices[&x], &self.matrices[&y]);
                let mut diff = mx * my - my * mx;
                for t in sc.bracket(x, y) {
                    diff -= &self.matrices[&t.target] * t.coef;
                }
                worst = worst.max(diff.amax());
            }
        }
        worst
    }
}

/// `exp(t J_ab)` in the vector representation, in closed form.
///
/// On the `(a, b)` block `J_ab² = −κ_ab`, so the exponential is the
/// κ-rotation `[[Ck, −κ Sk], [Sk, Ck]]` with κ = κ_ab.
pub fn one_parameter_subgroup(
    sig: &CkSignature,
    g: GeneratorIndex,
    t: f64,
) -> Result<DMatrix<f64>> {
    let k = two_index_kappa(sig, g.a, g.b)?;
    let dim = sig.n() + 1;
    let mut m = DMatrix::identity(dim, dim);
    let (c, s) = (ck_cos(k, t), ck_sin(k, t));
    m[(g.a, g.a)] = c;
    m[(g.b, g.b)] = c;
    m[(g.a, g.b)] = -k * s;
    m[(g.b, g.a)] = s;
    Ok(m)
}
