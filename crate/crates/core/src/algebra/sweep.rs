use serde::Serialize;

use super::{
    build_structure_constants, classify_algebra, contract_gamma, jacobi_residual,
    vector_representation, CkSignature,
};
use crate::exec::{map_indexed, Execution};

/// All `3^n` vectors in `{−1, 0, 1}^n`, in base-3 order.
pub fn all_sign_vectors(n: usize) -> Vec<Vec<f64>> {
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let digit = code % 3;
                    code /= 3;
                    digit as f64 - 1.0
                })
                .collect()
        })
        .collect()
}

/// Consistency checks for one algebra of a sign sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub kappa: Vec<f64>,
    pub name: String,
    pub jacobi: f64,
    pub representation_defect: f64,
    pub form_defect: f64,
    /// Max over m of the distance between `Γ^(m)` at ε = 0 and the `κ_m = 0` table.
    pub contraction_defect: f64,
}

impl SweepRow {
    pub fn passes(&self) -> bool {
        self.jacobi == 0.0
            && self.representation_defect == 0.0
            && self.form_defect == 0.0
            && self.contraction_defect == 0.0
    }
}

/// Runs the algebra checks over every sign vector of length `n`.
pub fn sweep_signs(n: usize, exec: Execution) -> Vec<SweepRow> {
    let vectors = all_sign_vectors(n);
    map_indexed(vectors.len(), exec, |i| {
        let sig = CkSignature::new(vectors[i].clone()).expect("n ≥ 1");
        let sc = build_structure_constants(&sig);
        let rep = vector_representation(&sig);
        let contraction_defect = (1..=n)
            .map(|m| {
                let contracted = contract_gamma(&sc, m, 0.0).expect("valid m");
                let target = build_structure_constants(&sig.with_kappa_m(m, 0.0).expect("valid m"));
                contracted.distance(&target)
            })
            .fold(0.0, f64::max);
        SweepRow {
            kappa: sig.kappa().to_vec(),
            name: classify_algebra(&sig),
            jacobi: jacobi_residual(&sc),
            representation_defect: rep.bracket_defect(&sc),
            form_defect: rep.form_defect(),
            contraction_defect,
        }
    })
}
