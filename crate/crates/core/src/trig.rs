//! κ-trigonometry and the removable-singularity helpers used across the crate.
//!
//! `Ck_κ` and `Sk_κ` interpolate between circular (κ > 0), parabolic (κ = 0)
//! and hyperbolic (κ < 0) functions. Near κx² = 0 they are evaluated from the
//! even/odd power series so that every function here is smooth in κ across
//! zero.

/// Below this |κx²| the series branch is used.
const SERIES_CUTOFF: f64 = 1e-4;
/// Below this |u| the `*c` helpers switch to Taylor polynomials.
const TINY: f64 = 1e-6;

/// `Ck_κ(x)`: cos(√κ x), 1 or cosh(√−κ x).
pub fn ck_cos(kappa: f64, x: f64) -> f64 {
    let u = kappa * x * x;
    if u.abs() < SERIES_CUTOFF {
        // Σ (−u)^k / (2k)!
        1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0 + u * u * u * u / 40_320.0
    } else if kappa > 0.0 {
        (kappa.sqrt() * x).cos()
    } else {
        ((-kappa).sqrt() * x).cosh()
    }
}

/// `Sk_κ(x)`: sin(√κ x)/√κ, x or sinh(√−κ x)/√−κ.
pub fn ck_sin(kappa: f64, x: f64) -> f64 {
    let u = kappa * x * x;
    if u.abs() < SERIES_CUTOFF {
        // x Σ (−u)^k / (2k+1)!
        x * (1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0 + u * u * u * u / 362_880.0)
    } else if kappa > 0.0 {
        let s = kappa.sqrt();
        (s * x).sin() / s
    } else {
        let s = (-kappa).sqrt();
        (s * x).sinh() / s
    }
}

/// `Tk_κ(x) = Sk_κ(x) / Ck_κ(x)`.
pub fn ck_tan(kappa: f64, x: f64) -> f64 {
    ck_sin(kappa, x) / ck_cos(kappa, x)
}

/// Inverse of [`ck_tan`] on the principal branch.
///
/// Returns `None` for κ < 0 when √−κ |t| ≥ 1 (beyond the light cone).
pub fn arc_ck_tan(kappa: f64, t: f64) -> Option<f64> {
    let u = kappa * t * t;
    if u.abs() < SERIES_CUTOFF {
        let mut sum = 0.0;
        let mut pow = 1.0;
        for k in 0..8 {
            sum += pow / (2 * k + 1) as f64;
            pow *= -u;
        }
        return Some(t * sum);
    }
    if kappa > 0.0 {
        let s = kappa.sqrt();
        Some((s * t).atan() / s)
    } else {
        let s = (-kappa).sqrt();
        let a = s * t;
        (a.abs() < 1.0).then(|| a.atanh() / s)
    }
}

/// `sinh(u)/u`, equal to 1 at u = 0.
pub fn sinhc(u: f64) -> f64 {
    if u.abs() < TINY {
        let u2 = u * u;
        1.0 + u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sinh() / u
    }
}

/// Derivative of [`sinhc`].
pub fn sinhc_prime(u: f64) -> f64 {
    if u.abs() < TINY {
        u / 3.0 + u * u * u / 30.0
    } else {
        (u * u.cosh() - u.sinh()) / (u * u)
    }
}

/// `(e^u − 1)/u`, equal to 1 at u = 0.
pub fn expm1c(u: f64) -> f64 {
    if u.abs() < TINY {
        1.0 + u / 2.0 + u * u / 6.0
    } else {
        u.exp_m1() / u
    }
}

/// `ln(1 + u)/u`, equal to 1 at u = 0.
pub fn log1pc(u: f64) -> f64 {
    if u.abs() < TINY {
        1.0 - u / 2.0 + u * u / 3.0
    } else {
        u.ln_1p() / u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn flat_limits() {
        assert_eq!(ck_cos(0.0, 5.0), 1.0);
        assert_eq!(ck_sin(0.0, 5.0), 5.0);
        assert_eq!(ck_tan(0.0, 2.5), 2.5);
    }

    #[test]
    fn circular_values() {
        assert!((ck_cos(1.0, PI) + 1.0).abs() < 1e-15);
        assert!((ck_sin(1.0, PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((ck_sin(4.0, PI / 4.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_values() {
        assert!((ck_cos(-1.0, 0.7) - 0.7f64.cosh()).abs() < 1e-15);
        assert!((ck_sin(-4.0, 0.7) - (1.4f64).sinh() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn continuous_across_series_cutoff() {
        // the series branch just below the cutoff agrees with the closed form there
        for &x in &[0.5, 1.0, 3.0] {
            let k = 0.999_999 * SERIES_CUTOFF / (x * x);
            let s = k.sqrt();
            assert!((ck_cos(k, x) - (s * x).cos()).abs() < 1e-15);
            assert!((ck_sin(k, x) - (s * x).sin() / s).abs() < 1e-15);
            assert!((ck_cos(-k, x) - (s * x).cosh()).abs() < 1e-15);
            assert!((ck_sin(-k, x) - (s * x).sinh() / s).abs() < 1e-15);
        }
    }

    #[test]
    fn arc_tan_inverts() {
        for &k in &[2.0, 0.3, 1e-9, 0.0, -1e-9, -0.3, -2.0] {
            for &x in &[0.05, 0.3, 0.6] {
                let t = ck_tan(k, x);
                let back = arc_ck_tan(k, t).unwrap();
                assert!((back - x).abs() < 1e-13, "k={k} x={x} back={back}");
            }
        }
        assert!(arc_ck_tan(-1.0, 1.5).is_none());
    }

    #[test]
    fn removable_singularities() {
        assert_eq!(sinhc(0.0), 1.0);
        assert!((sinhc(1e-7) - 1.0).abs() < 1e-14);
        assert!((sinhc(0.5) - 0.5f64.sinh() / 0.5).abs() < 1e-16);
        assert!((expm1c(-2e-7) - (-2e-7f64).exp_m1() / -2e-7).abs() < 1e-15);
        assert!((log1pc(3e-7) - (3e-7f64).ln_1p() / 3e-7).abs() < 1e-15);
        let h = 1e-6;
        for &u in &[0.0, 0.2, -1.3] {
            let fd = (sinhc(u + h) - sinhc(u - h)) / (2.0 * h);
            assert!((fd - sinhc_prime(u)).abs() < 1e-8);
        }
    }
}
