//! Change of chart between the Cartesian-type coordinates and `(r, θ, φ)`.
//!
//! Written entirely with κ-trigonometry in `κ1 = z`, `κ2 = λ₂²`:
//!
//! - `Tk_z(r)² = (e^{2zJ₋} − 1)/z`
//! - `Tk_κ2(θ)² = (e^{2z(s1+s2)} − 1) / (κ2 e^{2z(s1+s2)} (e^{2zs3} − 1))`
//! - `tan²φ = (e^{2zs1} − 1) / (e^{2zs1} (e^{2zs2} − 1))`
//!
//! with `s_i = σ_i w_i²`. Signs are carried by the angles: `w1` follows
//! `sin φ`, `w2` follows `cos φ` and `w3` follows `Ck_κ2(θ)`, which makes the
//! inverse smooth across the coordinate planes. Lorentzian charts cover the
//! future cone `w3 > 0` only.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{DMatrix, DVector};

use crate::riemann::StepRule;
use crate::space::GeodesicPolarCoords;
use crate::trig::{arc_ck_tan, ck_cos, ck_sin, ck_tan, expm1c, log1pc};
use crate::{Error, Result};

use super::params::DeformationParams;

fn check_signature(params: &DeformationParams) -> Result<()> {
    if params.lambda2_sq == 0.0 {
        return Err(Error::DegenerateSignature);
    }
    Ok(())
}

/// `(w1, w2, w3) ↦ (r, θ, φ)`.
pub fn polar_change(params: &DeformationParams, w: &[f64]) -> Result<GeodesicPolarCoords> {
    check_signature(params)?;
    if w.len() != 3 || !w.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "expected three finite coordinates, got {w:?}"
        )));
    }
    let (z, k2) = (params.z, params.lambda2_sq);
    let sg = params.site_signs();
    let s: Vec<f64> = (0..3).map(|i| sg[i] * w[i] * w[i]).collect();
    let total = s[0] + s[1] + s[2];
    if total < 0.0 {
        return Err(Error::Domain(format!(
            "J₋ = {total} < 0 lies outside the time-like region"
        )));
    }
    let tk_r_sq = 2.0 * total * expm1c(2.0 * z * total);
    let r = arc_ck_tan(z, tk_r_sq.sqrt())
        .ok_or_else(|| Error::Domain(format!("no r for Tk² = {tk_r_sq}")))?;

    let s12 = s[0] + s[1];
    let b12 = 2.0 * s12 * expm1c(2.0 * z * s12);
    let b3 = (2.0 * z * s12).exp() * 2.0 * s[2] * expm1c(2.0 * z * s[2]);
    if k2 < 0.0 && w[2] <= 0.0 {
        return Err(Error::Domain("Lorentzian chart covers w3 > 0 only".into()));
    }
    let theta = if b3 == 0.0 {
        if k2 > 0.0 {
            FRAC_PI_2 / k2.sqrt()
        } else {
            return Err(Error::Domain("point on the light cone".into()));
        }
    } else {
        let t_sq = b12 / (k2 * b3);
        if t_sq < 0.0 {
            return Err(Error::Domain(format!("Tk_κ2(θ)² = {t_sq} < 0")));
        }
        let t0 = arc_ck_tan(k2, t_sq.sqrt())
            .ok_or_else(|| Error::Domain(format!("no θ for Tk² = {t_sq}")))?;
        if w[2] < 0.0 {
            PI / k2.sqrt() - t0
        } else {
            t0
        }
    };

    let num = (s[0] * expm1c(2.0 * z * s[0])).abs().sqrt().copysign(w[0]);
    let den = ((2.0 * z * s[0]).exp() * s[1] * expm1c(2.0 * z * s[1]))
        .abs()
        .sqrt()
        .copysign(w[1]);
    let phi = num.atan2(den).rem_euclid(TAU);
    Ok(GeodesicPolarCoords::new(r, theta, vec![phi]))
}

/// `(r, θ, φ) ↦ (w1, w2, w3)`.
pub fn polar_change_inverse(
    params: &DeformationParams,
    c: &GeodesicPolarCoords,
) -> Result<Vec<f64>> {
    inverse_with_margin(params, c).map(|(w, _)| w)
}

/// Smallest `1 + z·a_i` met while inverting, where each site solves `e^{2zs} = 1 + z·a`.
///
/// It tends to 0 where the Cartesian coordinates run off to infinity, so it
/// measures the distance to the edge of the region the Cartesian chart covers.
pub fn chart_margin(params: &DeformationParams, c: &GeodesicPolarCoords) -> Result<f64> {
    inverse_with_margin(params, c).map(|(_, m)| m)
}

fn inverse_with_margin(
    params: &DeformationParams,
    c: &GeodesicPolarCoords,
) -> Result<(Vec<f64>, f64)> {
    check_signature(params)?;
    if c.n() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected (r, θ, φ), got N = {}",
            c.n()
        )));
    }
    let (z, k2) = (params.z, params.lambda2_sq);
    let t = ck_tan(z, c.r).powi(2);
    let (sk, ck) = (ck_sin(k2, c.theta), ck_cos(k2, c.theta));
    let phi = c.phi[0];
    let mut margin = f64::INFINITY;
    let mut solve = |a: f64| -> Result<f64> {
        let m = 1.0 + z * a;
        if m <= 0.0 {
            return Err(Error::Domain(format!("1 + z·{a} ≤ 0")));
        }
        margin = margin.min(m);
        Ok(0.5 * a * log1pc(z * a))
    };
    let s1 = solve(t * k2 * sk * sk * phi.sin().powi(2))?;
    let s2 = solve(t * k2 * sk * sk * phi.cos().powi(2) * (-2.0 * z * s1).exp())?;
    let s3 = solve(t * ck * ck * (-2.0 * z * (s1 + s2)).exp())?;
    let sg = params.site_signs();
    let orient = [phi.sin(), phi.cos(), ck];
    let w = [s1, s2, s3]
        .iter()
        .zip(sg)
        .zip(orient)
        .map(|((&s, g), o)| {
            if s * g < -1e-300 {
                Err(Error::Domain(format!(
                    "site square {s} has the wrong sign for σ = {g}"
                )))
            } else {
                Ok(s.abs().sqrt().copysign(o))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((w, margin))
}

/// `∂w/∂(r, θ, φ)` by 4th-order central differences of the inverse map.
pub fn inverse_jacobian(params: &DeformationParams, y: &[f64]) -> Result<DMatrix<f64>> {
    let rule = StepRule::Scaled(1e-3);
    let mut j = DMatrix::zeros(3, 3);
    for k in 0..3 {
        let h = rule.at(y[k]);
        let mut col = DVector::zeros(3);
        for (s, c) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
            let mut z = y.to_vec();
            z[k] += s * h;
            let w = polar_change_inverse(params, &GeodesicPolarCoords::from_slice(&z)?)?;
            col += DVector::from_vec(w) * c;
        }
        j.set_column(k, &(col / (12.0 * h)));
    }
    Ok(j)
}

/// `∂(r, θ, φ)/∂w` in closed form.
///
/// Each angle solves `Tk_κ(α)² = ρ`, so `dα = ½ Sk_κ(α) Ck_κ(α) d ln ρ`. With
/// `U(s) = (e^{2zs} − 1)/z` and `s = σw²`, `∂ ln U/∂w = 2e^{2zs}/(w expm1c(2zs))`.
pub fn polar_jacobian(params: &DeformationParams, w: &[f64]) -> Result<DMatrix<f64>> {
    let y = polar_change(params, w)?;
    if w.contains(&0.0) {
        return Err(Error::Domain(format!(
            "polar Jacobian needs w off the coordinate planes, got {w:?}"
        )));
    }
    let (z, k2) = (params.z, params.lambda2_sq);
    let sg = params.site_signs();
    let s: Vec<f64> = (0..3).map(|i| sg[i] * w[i] * w[i]).collect();
    let ds: Vec<f64> = (0..3).map(|i| 2.0 * sg[i] * w[i]).collect();
    let dlog_u = |x: f64, sx: f64| 2.0 * (2.0 * z * sx).exp() / (x * expm1c(2.0 * z * sx));
    let dlog_u_of_sum = |sx: f64| 1.0 / (sx * expm1c(2.0 * z * sx)) * (2.0 * z * sx).exp();
    let half_sc = |kappa: f64, a: f64| 0.5 * ck_sin(kappa, a) * ck_cos(kappa, a);

    let mut j = DMatrix::zeros(3, 3);
    let total = s[0] + s[1] + s[2];
    let r_rate = half_sc(z, y.r) * dlog_u_of_sum(total);
    let s12 = s[0] + s[1];
    let b12_rate = dlog_u_of_sum(s12);
    let theta_rate = half_sc(k2, y.theta);
    let phi_rate = half_sc(1.0, y.phi[0]);
    for i in 0..3 {
        j[(0, i)] = r_rate * ds[i];
    }
    for i in 0..2 {
        j[(1, i)] = theta_rate * (b12_rate - 2.0 * z) * ds[i];
    }
    j[(1, 2)] = -theta_rate * dlog_u(w[2], s[2]);
    j[(2, 0)] = phi_rate * (dlog_u(w[0], s[0]) - 2.0 * z * ds[0]);
    j[(2, 1)] = -phi_rate * dlog_u(w[1], s[1]);
    Ok(j)
}

/// Pulls a Cartesian metric back to `(r, θ, φ)`: `Jᵀ G(w(y)) J` with `J = ∂w/∂y`.
pub fn pullback_to_polar(
    params: &DeformationParams,
    g_cart: &DMatrix<f64>,
    y: &[f64],
) -> Result<DMatrix<f64>> {
    let j = inverse_jacobian(params, y)?;
    Ok(j.transpose() * g_cart * j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::Profile;

    fn params(z: f64, l2: f64) -> DeformationParams {
        DeformationParams::new(z, l2, Profile::one()).unwrap()
    }

    #[test]
    fn forward_and_inverse_jacobians_are_inverse() {
        for (z, l2) in [(0.4, 1.0), (-0.3, 1.0), (0.5, -1.0), (-0.5, -1.0)] {
            let p = params(z, l2);
            for w in [[0.3, 0.2, 0.6], [-0.2, 0.35, 0.5], [0.01, -0.3, 0.7]] {
                let y = polar_change(&p, &w).unwrap().to_vec();
                let product = polar_jacobian(&p, &w).unwrap() * inverse_jacobian(&p, &y).unwrap();
                assert!(
                    (product - DMatrix::<f64>::identity(3, 3)).amax() < 1e-9,
                    "{z} {l2} {w:?}"
                );
            }
        }
    }

    #[test]
    fn origin_maps_to_zero_radius() {
        let c = polar_change(&params(0.2, 1.0), &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.r, 0.0);
    }

    #[test]
    fn printed_relations_hold() {
        let (z, w) = (0.3, [0.4, 0.7, 0.5]);
        let c = polar_change(&params(z, 1.0), &w).unwrap();
        let q2: Vec<f64> = w.iter().map(|v| v * v).collect();
        let l1 = z.sqrt();
        let tan2 = (l1 * c.r).tan().powi(2);
        let e = |v: f64| (2.0 * z * v).exp();
        assert!(
            ((l1 * c.r).cos().powi(2) - (-2.0 * z * (q2[0] + q2[1] + q2[2])).exp()).abs() < 1e-14
        );
        assert!(
            (tan2 * c.theta.cos().powi(2) - e(q2[0]) * e(q2[1]) * (e(q2[2]) - 1.0)).abs() < 1e-13
        );
        let sp = tan2 * c.theta.sin().powi(2);
        assert!((sp * c.phi[0].cos().powi(2) - e(q2[0]) * (e(q2[1]) - 1.0)).abs() < 1e-13);
        assert!((sp * c.phi[0].sin().powi(2) - (e(q2[0]) - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn round_trip() {
        for (z, l2) in [(0.2, 1.0), (-0.2, 1.0), (0.2, -1.0), (-0.2, -1.0)] {
            let p = params(z, l2);
            let w = if l2 > 0.0 {
                [0.3, 0.5, 0.4]
            } else {
                [0.3, 0.2, 0.7]
            };
            let c = polar_change(&p, &w).unwrap();
            let back = polar_change_inverse(&p, &c).unwrap();
            for (a, b) in w.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12, "{z} {l2}: {w:?} vs {back:?}");
            }
        }
    }

    #[test]
    fn signed_round_trip_off_the_positive_octant() {
        let p = params(0.3, 1.0);
        for w in [
            [-0.3, 0.5, 0.4],
            [0.3, -0.5, -0.4],
            [-0.2, -0.1, -0.6],
            [0.0, -0.4, 0.2],
        ] {
            let c = polar_change(&p, &w).unwrap();
            let back = polar_change_inverse(&p, &c).unwrap();
            for (a, b) in w.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12, "{w:?} vs {back:?}");
            }
        }
    }

    #[test]
    fn inverse_is_smooth_across_coordinate_planes() {
        let p = params(0.3, 1.0);
        let h = 1e-6;
        for y in [[0.6, 0.8, FRAC_PI_2], [0.6, FRAC_PI_2, 0.7], [0.6, 0.8, PI]] {
            for k in 1..3 {
                let mut lo = y;
                let mut hi = y;
                lo[k] -= h;
                hi[k] += h;
                let a = polar_change_inverse(&p, &GeodesicPolarCoords::from_slice(&lo).unwrap())
                    .unwrap();
                let b = polar_change_inverse(&p, &GeodesicPolarCoords::from_slice(&hi).unwrap())
                    .unwrap();
                assert!(common_gap(&a, &b) < 1e-5);
            }
        }
    }

    fn common_gap(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn degenerate_and_outside() {
        assert_eq!(
            polar_change(&params(0.2, 0.0), &[0.1, 0.1, 0.1]),
            Err(Error::DegenerateSignature)
        );
        assert!(matches!(
            polar_change(&params(0.2, -1.0), &[0.6, 0.6, 0.1]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            polar_change(&params(0.2, -1.0), &[0.1, 0.1, -0.6]),
            Err(Error::Domain(_))
        ));
    }
}
