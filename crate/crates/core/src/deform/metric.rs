//! Deformed metrics in Cartesian and polar form, and their closed-form curvatures.

use crate::riemann::CurvatureReport;
use crate::space::{metric_polar, KappaPair};
use crate::trig::{ck_cos, ck_sin};
use crate::{Error, MetricField, Result};

use super::params::DeformationParams;
use super::realization::site_prefactors;

/// `ds² = Σ_i 2σ_i / (pre_i · f(zJ₋)) dw_i²` with `q_i² = σ_i w_i²`.
///
/// The overall factor 2 comes from `ds² = 2𝒯 dt²` with `𝒯 = ½ J₊ f(zJ₋)`;
/// at `z = 0` the metric is `2 Σ dq_i²`. Coordinates are the real `w_i`.
pub fn deformed_metric_cartesian(params: &DeformationParams) -> MetricField {
    let signs = params.site_signs();
    let (z, profile) = (params.z, params.profile.clone());
    let guard_profile = params.profile.clone();
    let squares =
        move |w: &[f64]| -> Vec<f64> { w.iter().zip(signs).map(|(w, s)| s * w * w).collect() };
    MetricField::diagonal(
        3,
        format!("deformed Cartesian z={z} f={}", params.profile.name()),
        move |w, d| {
            let s = squares(w);
            let pre = site_prefactors(z, &s);
            let f = profile.f(z * s.iter().sum::<f64>());
            for i in 0..3 {
                d[i] = 2.0 * signs[i] / (pre[i] * f);
            }
        },
        move |w| {
            let x = z * w.iter().zip(signs).map(|(w, s)| s * w * w).sum::<f64>();
            let f = guard_profile.f(x);
            f.is_finite() && f > 0.0 && x.abs() < 300.0
        },
    )
}

/// Sectional and scalar curvature of the Cartesian metric with `f = 1`, Euclidean signs.
pub fn cartesian_curvature_closed_form(z: f64, q: &[f64]) -> Result<CurvatureReport> {
    if q.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "closed forms are three-dimensional, got {}",
            q.len()
        )));
    }
    let (a2, a3) = (q[1] * q[1], q[2] * q[2]);
    let x = z * (q[0] * q[0] + a2 + a3);
    let e = |v: f64| (2.0 * z * v).exp();
    let c = 0.25 * z * (-x).exp();
    let total = (2.0 * x).exp();
    let k12 = c * (1.0 + e(a3) - 2.0 * total);
    let k13 = c * (2.0 - e(a3) + e(a2 + a3) - 2.0 * total);
    let k23 = c * (2.0 - e(a2 + a3) - total);
    Ok(CurvatureReport::closed_form(
        q.to_vec(),
        vec![((0, 1), k12), ((0, 2), k13), ((1, 2), k23)],
        -5.0 * z * x.sinh(),
    ))
}

/// `K(x) = z(6f′ cosh x + (4f″ − 5f − 5f′²/f) sinh x)` at `x = zJ₋`.
pub fn scalar_curvature_formula(params: &DeformationParams, x: f64) -> Result<f64> {
    let p = &params.profile;
    let f = p.f(x);
    if f == 0.0 {
        return Err(Error::Domain(format!("profile vanishes at x = {x}")));
    }
    let (d1, d2) = (p.df(x), p.d2f(x));
    Ok(params.z * (6.0 * d1 * x.cosh() + (4.0 * d2 - 5.0 * f - 5.0 * d1 * d1 / f) * x.sinh()))
}

/// `1 / (Ck_z(r) g(r))`.
pub fn conformal_factor(params: &DeformationParams, r: f64) -> Result<f64> {
    let c = ck_cos(params.z, r);
    if c <= 0.0 {
        return Err(Error::ConformalSingularity(r));
    }
    let d = c * params.profile.g(params.z, r);
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::ConformalSingularity(r));
    }
    Ok(1.0 / d)
}

/// Cutoff on `Ck_z(r)·g(r)` used by the polar guard.
const CONFORMAL_FLOOR: f64 = 1e-6;

/// The CK metric with `(κ1, κ2) = (z, λ₂²)` times `1/(Ck_z(r) g(r))`.
pub fn deformed_metric_polar(params: &DeformationParams) -> Result<MetricField> {
    let base = metric_polar(KappaPair::new(params.z, params.lambda2_sq), 3)?;
    let (p1, p2) = (params.clone(), params.clone());
    let label = format!(
        "deformed polar z={} λ₂²={} g={}",
        params.z,
        params.lambda2_sq,
        params.profile.name()
    );
    Ok(base
        .restricted(move |x| conformal_factor(&p1, x[0]).is_ok_and(|c| c < 1.0 / CONFORMAL_FLOOR))
        .conformal(label, move |x| {
            conformal_factor(&p2, x[0]).unwrap_or(f64::NAN)
        }))
}

/// Closed-form curvatures of the polar metric for the `one` and `ck` profiles.
///
/// `g = 1`: `K_1j = −½ z² Sk_z(r)²/Ck_z(r)`, `K_23 = K_1j/2`, `K = 5 K_1j`.
/// `g = 1/Ck_z`: the CK space, `K_ij = z`, `K = 6z`.
pub fn polar_curvature_closed_form(
    params: &DeformationParams,
    point: &[f64],
) -> Option<CurvatureReport> {
    let (z, r) = (params.z, *point.first()?);
    let (k1j, k23, k) = match params.profile.name() {
        "one" => {
            let k1j = -0.5 * z * z * ck_sin(z, r).powi(2) / ck_cos(z, r);
            (k1j, 0.5 * k1j, 5.0 * k1j)
        }
        "ck" => (z, z, 6.0 * z),
        _ => return None,
    };
    Some(CurvatureReport::closed_form(
        point.to_vec(),
        vec![((0, 1), k1j), ((0, 2), k1j), ((1, 2), k23)],
        k,
    ))
}
