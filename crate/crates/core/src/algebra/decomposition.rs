use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::signature::{CkSignature, GeneratorIndex};
use super::structure::{StructureConstants, Term};
use crate::{Error, Result};

fn in_rectangle(m: usize, g: GeneratorIndex) -> bool {
    g.a < m && m <= g.b
}

/// Sign of `J_ab` under the involution `Θ^(m)`: −1 inside the rectangle
/// `a < m ≤ b`, +1 otherwise.
pub fn involution_theta(sig: &CkSignature, m: usize, g: GeneratorIndex) -> Result<i8> {
    sig.check_m(m)?;
    GeneratorIndex::new(g.a, g.b, sig.n())?;
    Ok(if in_rectangle(m, g) { -1 } else { 1 })
}

/// Bracket table in the rescaled basis `J_ab ↦ ε J_ab` for `a < m ≤ b`.
///
/// A term `[X, Y] = c T` picks up `ε^(s_X + s_Y − s_T)`, with `s = 1` on the
/// rescaled generators. For CK tables the exponent is 0 or 2, so `ε = 0` is a
/// finite limit and equals the algebra with `κ_m = 0`.
pub fn contract_gamma(sc: &StructureConstants, m: usize, eps: f64) -> Result<StructureConstants> {
    let sig = sc.signature();
    sig.check_m(m)?;
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "contraction parameter {eps} must be ≥ 0"
        )));
    }
    let s = |g: GeneratorIndex| i32::from(in_rectangle(m, g));
    let mut table = BTreeMap::new();
    for (&(x, y), terms) in sc.entries() {
        let mut scaled = Vec::with_capacity(terms.len());
        for t in terms {
            let power = s(x) + s(y) - s(t.target);
            if power < 0 {
                return Err(Error::InvalidArgument(format!(
                    "[{x}, {y}] → {}: contraction Γ^({m}) diverges on this table",
                    t.target
                )));
            }
            let coef = t.coef * eps.powi(power);
            if coef != 0.0 {
                scaled.push(Term {
                    coef,
                    target: t.target,
                });
            }
        }
        if !scaled.is_empty() {
            table.insert((x, y), scaled);
        }
    }
    let km = sig.kappa_m(m)?;
    let new_sig = sig.with_kappa_m(m, eps * eps * km)?;
    Ok(StructureConstants::from_table(new_sig, table))
}

/// `so_κ(N+1) = p^(m) ⊕ h^(m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanDecomposition {
    pub m: usize,
    /// Anti-invariant generators (the rectangle `a < m ≤ b`).
    pub p_generators: BTreeSet<GeneratorIndex>,
    /// Invariant generators; a subalgebra.
    pub h_generators: BTreeSet<GeneratorIndex>,
    /// Signature `(κ_1..κ_{m−1})` of the `so(m)` factor of h.
    pub left_factor: Vec<f64>,
    /// Signature `(κ_{m+1}..κ_N)` of the `so(N+1−m)` factor of h.
    pub right_factor: Vec<f64>,
}

pub fn cartan_decompose(sig: &CkSignature, m: usize) -> Result<CartanDecomposition> {
    sig.check_m(m)?;
    let (p, h): (Vec<_>, Vec<_>) = sig
        .generators()
        .into_iter()
        .partition(|&g| in_rectangle(m, g));
    Ok(CartanDecomposition {
        m,
        p_generators: p.into_iter().collect(),
        h_generators: h.into_iter().collect(),
        left_factor: sig.kappa()[..m - 1].to_vec(),
        right_factor: sig.kappa()[m..].to_vec(),
    })
}

/// Dimension, rank and curvature of the symmetric space `S^(m) = SO_κ(N+1)/H^(m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceReport {
    pub m: usize,
    pub dimension: usize,
    pub rank: usize,
    pub curvature_coefficient: f64,
    pub isotropy: String,
}

pub fn space_report(sig: &CkSignature, m: usize) -> Result<SpaceReport> {
    let curvature_coefficient = sig.kappa_m(m)?;
    let n = sig.n();
    let fmt_factor = |ks: &[f64], dim: usize| -> Option<String> {
        if dim < 2 {
            return None;
        }
        let ks: Vec<String> = ks.iter().map(|k| format!("{k}")).collect();
        Some(format!("SO_{{{}}}({dim})", ks.join(",")))
    };
    let parts: Vec<String> = [
        fmt_factor(&sig.kappa()[..m - 1], m),
        fmt_factor(&sig.kappa()[m..], n + 1 - m),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok(SpaceReport {
        m,
        dimension: m * (n + 1 - m),
        rank: m.min(n + 1 - m),
        curvature_coefficient,
        isotropy: if parts.is_empty() {
            "{1}".into()
        } else {
            parts.join(" ⊗ ")
        },
    })
}
