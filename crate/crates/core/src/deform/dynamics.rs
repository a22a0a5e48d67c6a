//! Geodesic Hamiltonian in polar form and its integrals of motion.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::riemann::{FlowState, Hamiltonian, StepRule};
use crate::space::GeodesicPolarCoords;
use crate::trig::{ck_cos, ck_sin};
use crate::{Error, MetricField, Result};

use super::metric::deformed_metric_polar;
use super::params::DeformationParams;
use super::polar::{chart_margin, inverse_jacobian, polar_change_inverse, polar_jacobian};
use super::realization::{casimir_of, realization_signed, PhasePoint};

/// Smallest admissible [`chart_margin`] along a geodesic.
pub const CHART_MARGIN: f64 = 1e-2;

/// `T = ½ Ck_z(r) g(r) (p_r² + (p_θ² + p_φ²/Sk_κ2(θ)²) / (κ2 Sk_z(r)²))`.
///
/// This is `½ g^{ij} p_i p_j` for [`deformed_metric_polar`]. The domain is
/// the part of that metric's chart reached by the Cartesian coordinates, where
/// the Casimirs are defined.
#[derive(Debug, Clone)]
pub struct GeodesicHamiltonian {
    params: DeformationParams,
    metric: MetricField,
}

pub fn geodesic_hamiltonian(params: &DeformationParams) -> Result<GeodesicHamiltonian> {
    if params.lambda2_sq == 0.0 {
        return Err(Error::DegenerateSignature);
    }
    Ok(GeodesicHamiltonian {
        params: params.clone(),
        metric: deformed_metric_polar(params)?,
    })
}

impl GeodesicHamiltonian {
    pub fn params(&self) -> &DeformationParams {
        &self.params
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }
}

impl Hamiltonian for GeodesicHamiltonian {
    fn dimension(&self) -> usize {
        3
    }

    fn value(&self, y: &[f64], p: &[f64]) -> f64 {
        let (z, k2) = (self.params.z, self.params.lambda2_sq);
        let skr = ck_sin(z, y[0]);
        let skt = ck_sin(k2, y[1]);
        let lead = ck_cos(z, y[0]) * self.params.profile.g(z, y[0]);
        0.5 * lead * (p[0] * p[0] + (p[1] * p[1] + p[2] * p[2] / (skt * skt)) / (k2 * skr * skr))
    }

    fn in_domain(&self, y: &[f64]) -> bool {
        self.metric.in_domain(y)
            && GeodesicPolarCoords::from_slice(y)
                .and_then(|c| chart_margin(&self.params, &c))
                .is_ok_and(|m| m >= CHART_MARGIN)
    }

    /// Closed-form gradient; with it the midpoint map is exactly symplectic.
    fn gradient(&self, y: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (z, k2) = (self.params.z, self.params.lambda2_sq);
        let (sk, ck) = (ck_sin(z, y[0]), ck_cos(z, y[0]));
        let (st, ct) = (ck_sin(k2, y[1]), ck_cos(k2, y[1]));
        let x = -ck.ln();
        let g = self.params.profile.f(x);
        let dg = self.params.profile.df(x) * z * sk / ck;
        let a = ck * g;
        let da = -z * sk * g + ck * dg;
        let b = 1.0 / (k2 * sk * sk);
        let db = -2.0 * ck / (k2 * sk * sk * sk);
        let q = p[1] * p[1] + p[2] * p[2] / (st * st);
        let dq_theta = -2.0 * p[2] * p[2] * ct / (st * st * st);
        let grad_y = vec![
            0.5 * da * (p[0] * p[0] + b * q) + 0.5 * a * db * q,
            0.5 * a * b * dq_theta,
            0.0,
        ];
        let grad_p = vec![a * p[0], a * b * p[1], a * b * p[2] / (st * st)];
        (grad_y, grad_p)
    }
}

/// `(w, p_w)` from `(y, p_y)` by the canonical lift `p_w = (∂y/∂w)ᵀ p_y`.
pub fn polar_to_cartesian_phase(
    params: &DeformationParams,
    y: &[f64],
    p_y: &[f64],
) -> Result<PhasePoint> {
    let w = polar_change_inverse(params, &GeodesicPolarCoords::from_slice(y)?)?;
    let p = polar_jacobian(params, &w)?.transpose() * nalgebra::DVector::from_column_slice(p_y);
    PhasePoint::new(w, p.iter().copied().collect())
}

/// `p_y = (∂w/∂y)ᵀ p_w` at the polar image of `pt`.
pub fn cartesian_to_polar_momenta(
    params: &DeformationParams,
    y: &[f64],
    p_w: &[f64],
) -> Result<Vec<f64>> {
    let j = inverse_jacobian(params, y)?;
    Ok((j.transpose() * nalgebra::DVector::from_column_slice(p_w))
        .iter()
        .copied()
        .collect())
}

/// `𝒯 = ½ J₊ f(zJ₋)` on the three-site chain in the signed chart.
pub fn cartesian_kinetic(params: &DeformationParams, pt: &PhasePoint) -> Result<f64> {
    let t = realization_signed(params.z, &params.site_signs(), pt)?;
    Ok(0.5 * t.j_plus * params.profile.f(params.z * t.j_minus))
}

/// Integrals of the geodesic motion at one phase point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    pub h: f64,
    /// Casimir of sites (1, 2).
    pub c2: f64,
    /// Casimir of sites (2, 3).
    pub c2_left: f64,
    pub c3: f64,
    pub p_phi: f64,
}

impl Invariants {
    pub fn as_array(&self) -> [f64; 5] {
        [self.h, self.c2, self.c2_left, self.c3, self.p_phi]
    }

    pub const NAMES: [&'static str; 5] = ["H", "C2", "C2_left", "C3", "p_phi"];
}

/// Casimirs on the sub-chains, computed in the signed Cartesian chart.
pub fn casimirs(params: &DeformationParams, pt: &PhasePoint) -> Result<(f64, f64, f64)> {
    let signs = params.site_signs();
    let on = |range: std::ops::Range<usize>| -> Result<f64> {
        let t = realization_signed(params.z, &signs[range.clone()], &pt.sub_chain(range))?;
        Ok(casimir_of(params.z, &t))
    };
    Ok((on(0..2)?, on(1..3)?, on(0..3)?))
}

pub fn invariants(h: &GeodesicHamiltonian, y: &[f64], p_y: &[f64]) -> Result<Invariants> {
    let pt = polar_to_cartesian_phase(&h.params, y, p_y)?;
    let (c2, c2_left, c3) = casimirs(&h.params, &pt)?;
    Ok(Invariants {
        h: h.value(y, p_y),
        c2,
        c2_left,
        c3,
        p_phi: p_y[2],
    })
}

pub fn state_invariants(h: &GeodesicHamiltonian, s: &FlowState) -> Result<Invariants> {
    invariants(h, &s.coords, &s.momenta)
}

/// Jacobian of `(H, C2, C2_left, C3, p_φ)` with respect to `(y, p_y)` and its singular values.
pub fn invariant_jacobian(
    h: &GeodesicHamiltonian,
    y: &[f64],
    p_y: &[f64],
) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let mut jac = DMatrix::zeros(5, 6);
    let z0: Vec<f64> = y.iter().chain(p_y).copied().collect();
    let rule = StepRule::Scaled(1e-4);
    for k in 0..6 {
        let step = rule.at(z0[k]);
        let mut col = [0.0; 5];
        for (s, c) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
            let mut z = z0.clone();
            z[k] += s * step;
            let v = invariants(h, &z[..3], &z[3..])?.as_array();
            for i in 0..5 {
                col[i] += c * v[i];
            }
        }
        for i in 0..5 {
            jac[(i, k)] = col[i] / (12.0 * step);
        }
    }
    let sv = jac
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    Ok((jac, sv))
}

/// Number of singular values above `rel_tol · σ_max`, after normalizing each row.
pub fn numeric_rank(jac: &DMatrix<f64>, rel_tol: f64) -> usize {
    let mut m = jac.clone();
    for mut row in m.row_iter_mut() {
        let n = row.norm();
        if n > 0.0 {
            row /= n;
        }
    }
    let sv = m.svd(false, false).singular_values;
    let top = sv.max();
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}
