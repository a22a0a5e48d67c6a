//! Deformation parameters and conformal profiles.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::trig::ck_cos;
use crate::{Error, Result};

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// The function `f(x)` of `x = zJ₋`, with its first two derivatives.
///
/// In polar coordinates the same profile reads `g(r) = f(−ln Ck_z(r))`.
#[derive(Clone)]
pub struct Profile {
    name: String,
    f: Arc<ScalarFn>,
    df: Arc<ScalarFn>,
    d2f: Arc<ScalarFn>,
}

impl Profile {
    /// Profile with analytic derivatives.
    pub fn with_derivatives<F, D, D2>(name: impl Into<String>, f: F, df: D, d2f: D2) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
        }
    }

    /// Profile whose derivatives are taken by central differences.
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f = Arc::new(f);
        let (f1, f2) = (f.clone(), f.clone());
        let h = |x: f64| 1e-3 * x.abs().max(1.0);
        Self {
            name: name.into(),
            f,
            df: Arc::new(move |x| {
                let h = h(x);
                (-f1(x + 2.0 * h) + 8.0 * f1(x + h) - 8.0 * f1(x - h) + f1(x - 2.0 * h))
                    / (12.0 * h)
            }),
            d2f: Arc::new(move |x| {
                let h = h(x);
                (-f2(x + 2.0 * h) + 16.0 * f2(x + h) - 30.0 * f2(x) + 16.0 * f2(x - h)
                    - f2(x - 2.0 * h))
                    / (12.0 * h * h)
            }),
        }
    }

    /// `f = 1`.
    pub fn one() -> Self {
        Self::with_derivatives("one", |_| 1.0, |_| 0.0, |_| 0.0)
    }

    /// `f = e^x`.
    pub fn exp() -> Self {
        Self::with_derivatives("exp", f64::exp, f64::exp, f64::exp)
    }

    /// `g = 1/Ck_z(r)`, which is `f = e^x`; the deformed space is then the CK space itself.
    pub fn ck() -> Self {
        Self {
            name: "ck".into(),
            ..Self::exp()
        }
    }

    /// `f = 1 + x²/2`.
    pub fn poly2() -> Self {
        Self::with_derivatives("poly2", |x| 1.0 + 0.5 * x * x, |x| x, |_| 1.0)
    }

    /// Looks up one of `one`, `ck`, `exp`, `poly2`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "one" => Ok(Self::one()),
            "ck" => Ok(Self::ck()),
            "exp" => Ok(Self::exp()),
            "poly2" => Ok(Self::poly2()),
            other => Err(Error::InvalidArgument(format!(
                "unknown profile '{other}' (expected one, ck, exp, poly2)"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn df(&self, x: f64) -> f64 {
        (self.df)(x)
    }

    pub fn d2f(&self, x: f64) -> f64 {
        (self.d2f)(x)
    }

    /// `g(r) = f(−ln Ck_z(r))`; requires `Ck_z(r) > 0`.
    pub fn g(&self, z: f64, r: f64) -> f64 {
        self.f(-ck_cos(z, r).ln())
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Profile").field(&self.name).finish()
    }
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

/// `z = λ₁²` (deformation and curvature), `λ₂²` (signature) and the profile.
#[derive(Debug, Clone, Serialize)]
pub struct DeformationParams {
    pub z: f64,
    pub lambda2_sq: f64,
    pub profile: Profile,
}

impl DeformationParams {
    pub fn new(z: f64, lambda2_sq: f64, profile: Profile) -> Result<Self> {
        if !z.is_finite() || !lambda2_sq.is_finite() {
            return Err(Error::InvalidArgument("z and λ₂² must be finite".into()));
        }
        Ok(Self {
            z,
            lambda2_sq,
            profile,
        })
    }

    /// Signs `σ_i` with `q_i² = σ_i w_i²`: Lorentzian spaces make the first two sites time-like.
    pub fn site_signs(&self) -> [f64; 3] {
        if self.lambda2_sq < 0.0 {
            [-1.0, -1.0, 1.0]
        } else {
            [1.0, 1.0, 1.0]
        }
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Label of the deformed space selected by the signs of `(z, λ₂²)`.
pub fn classify_deformed(params: &DeformationParams) -> &'static str {
    match (sign(params.z), sign(params.lambda2_sq)) {
        (1, 1) => "S3_z",
        (1, 0) => "NH+_z",
        (1, _) => "AdS_z",
        (0, 1) => "E3",
        (0, 0) => "G",
        (0, _) => "M",
        (_, 1) => "H3_z",
        (_, 0) => "NH-_z",
        _ => "dS_z",
    }
}

/// Human-readable name for a label from [`classify_deformed`].
pub fn deformed_space_name(label: &str) -> &'static str {
    match label {
        "S3_z" => "deformed sphere",
        "NH+_z" => "deformed oscillating Newton-Hooke",
        "AdS_z" => "deformed anti-de Sitter",
        "E3" => "euclidean (non-deformed)",
        "G" => "galilean (non-deformed)",
        "M" => "minkowskian (non-deformed)",
        "H3_z" => "deformed hyperbolic",
        "NH-_z" => "deformed expanding Newton-Hooke",
        "dS_z" => "deformed de Sitter",
        _ => "unknown",
    }
}
