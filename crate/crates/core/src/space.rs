//! Rank-one Cayley-Klein spaces `S^N_[κ1]κ2 = SO_κ1,κ2(N+1)/SO_κ2(N)`.
//!
//! Points are given either by `N+1` ambient coordinates on the quadric
//! `x0² + κ1 x1² + κ1κ2 Σ x_j² = 1` or by geodesic polar coordinates
//! `(r, θ, φ_3, …, φ_N)`. With κ1 > 0, κ2 > 0 this is the round sphere;
//! κ2 < 0 gives the Lorentzian spacetimes and κ2 = 0 the degenerate
//! Newtonian ones.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::{one_parameter_subgroup, CkSignature, GeneratorIndex};
use crate::trig::{ck_cos, ck_sin};
use crate::{Error, MetricField, Result};

/// Curvature `κ1` and signature/contraction label `κ2`; `κ3 = … = κN = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaPair {
    pub kappa1: f64,
    pub kappa2: f64,
}

impl KappaPair {
    pub fn new(kappa1: f64, kappa2: f64) -> Self {
        Self { kappa1, kappa2 }
    }

    /// The full `so_κ(N+1)` signature `(κ1, κ2, 1, …, 1)`.
    pub fn signature(&self, n: usize) -> Result<CkSignature> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "rank-one spaces need N ≥ 2, got {n}"
            )));
        }
        let mut kappa = vec![1.0; n];
        kappa[0] = self.kappa1;
        kappa[1] = self.kappa2;
        CkSignature::new(kappa)
    }

    /// Diagonal of the ambient form `(1, κ1, κ1κ2, …, κ1κ2)`.
    fn ambient_weights(&self, n: usize) -> Vec<f64> {
        let mut w = vec![self.kappa1 * self.kappa2; n + 1];
        w[0] = 1.0;
        w[1] = self.kappa1;
        w
    }
}

/// `(r, θ, φ_3, …, φ_N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicPolarCoords {
    pub r: f64,
    pub theta: f64,
    pub phi: Vec<f64>,
}

impl GeodesicPolarCoords {
    pub fn new(r: f64, theta: f64, phi: Vec<f64>) -> Self {
        Self { r, theta, phi }
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::InvalidArgument(
                "polar coordinates need at least (r, θ)".into(),
            ));
        }
        Ok(Self {
            r: x[0],
            theta: x[1],
            phi: x[2..].to_vec(),
        })
    }

    /// Space dimension N.
    pub fn n(&self) -> usize {
        self.phi.len() + 2
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = vec![self.r, self.theta];
        v.extend_from_slice(&self.phi);
        v
    }
}

/// A point of the ambient space `R^{N+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmbientPoint {
    pub x: Vec<f64>,
}

impl AmbientPoint {
    /// `x0² + κ1 x1² + κ1κ2 Σ_{j≥2} x_j² − 1`.
    pub fn constraint_residual(&self, kp: KappaPair) -> f64 {
        let w = kp.ambient_weights(self.x.len() - 1);
        self.x.iter().zip(w).map(|(x, w)| w * x * x).sum::<f64>() - 1.0
    }
}

/// Chart limits shared by [`embed`] and the polar metric guards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarChart {
    /// Half-width of the excluded band around coordinate singularities.
    pub singular_radius: f64,
    /// Largest admissible |θ| when θ is a rapidity (κ2 < 0).
    pub rapidity_cap: f64,
}

impl Default for PolarChart {
    fn default() -> Self {
        Self {
            singular_radius: 1e-6,
            rapidity_cap: 50.0,
        }
    }
}

fn check_chart(kp: KappaPair, c: &GeodesicPolarCoords, chart: &PolarChart) -> Result<()> {
    if !c.to_vec().iter().all(|v| v.is_finite()) {
        return Err(Error::Domain("non-finite coordinate".into()));
    }
    if c.r < 0.0 {
        return Err(Error::Domain(format!("r = {} < 0", c.r)));
    }
    if kp.kappa1 > 0.0 && kp.kappa1.sqrt() * c.r >= std::f64::consts::PI {
        return Err(Error::Domain(format!(
            "√κ1 r = {} ≥ π",
            kp.kappa1.sqrt() * c.r
        )));
    }
    if kp.kappa2 > 0.0 {
        let t = kp.kappa2.sqrt() * c.theta;
        if !(0.0..=std::f64::consts::PI).contains(&t) {
            return Err(Error::Domain(format!("√κ2 θ = {t} outside [0, π]")));
        }
    } else if kp.kappa2 < 0.0 && c.theta.abs() > chart.rapidity_cap {
        return Err(Error::Domain(format!(
            "rapidity |θ| = {} above cap",
            c.theta.abs()
        )));
    }
    Ok(())
}

/// Angular factors `u_i` (i = 2..N) with `x_i = Sk_κ1(r) Sk_κ2(θ) u_i`.
fn angular_factors(phi: &[f64]) -> Vec<f64> {
    let n = phi.len() + 2;
    let mut u = Vec::with_capacity(n - 1);
    let mut prod = 1.0;
    for i in 2..=n {
        // phi[k] is φ_{k+3}
        if i < n {
            u.push(prod * phi[i - 2].cos());
            prod *= phi[i - 2].sin();
        } else {
            u.push(prod);
        }
    }
    u
}

/// Ambient coordinates of a polar point (closed form).
pub fn embed(coords: &GeodesicPolarCoords, kp: KappaPair) -> Result<AmbientPoint> {
    embed_with(coords, kp, &PolarChart::default())
}

pub fn embed_with(
    coords: &GeodesicPolarCoords,
    kp: KappaPair,
    chart: &PolarChart,
) -> Result<AmbientPoint> {
    check_chart(kp, coords, chart)?;
    let (s1, c1) = (ck_sin(kp.kappa1, coords.r), ck_cos(kp.kappa1, coords.r));
    let (s2, c2) = (
        ck_sin(kp.kappa2, coords.theta),
        ck_cos(kp.kappa2, coords.theta),
    );
    let mut x = vec![c1, s1 * c2];
    x.extend(
        angular_factors(&coords.phi)
            .into_iter()
            .map(|u| s1 * s2 * u),
    );
    Ok(AmbientPoint { x })
}

/// The same point obtained by acting on the origin with one-parameter subgroups:
/// `exp(φ_N J_{N−1,N}) ⋯ exp(φ_3 J_23) exp(θ J_12) exp(r J_01) 𝒪`.
pub fn embed_by_group_action(coords: &GeodesicPolarCoords, kp: KappaPair) -> Result<AmbientPoint> {
    let n = coords.n();
    let sig = kp.signature(n)?;
    let mut v = DVector::zeros(n + 1);
    v[0] = 1.0;
    let mut steps = vec![
        (GeneratorIndex { a: 0, b: 1 }, coords.r),
        (GeneratorIndex { a: 1, b: 2 }, coords.theta),
    ];
    for (k, &p) in coords.phi.iter().enumerate() {
        steps.push((GeneratorIndex { a: k + 2, b: k + 3 }, p));
    }
    for (g, t) in steps {
        v = one_parameter_subgroup(&sig, g, t)? * v;
    }
    Ok(AmbientPoint {
        x: v.iter().copied().collect(),
    })
}

/// Analytic Jacobian `∂x_k/∂(r, θ, φ…)` of [`embed`], `(N+1) × N`.
pub fn embedding_jacobian(coords: &GeodesicPolarCoords, kp: KappaPair) -> DMatrix<f64> {
    let n = coords.n();
    let (k1, k2) = (kp.kappa1, kp.kappa2);
    let (s1, c1) = (ck_sin(k1, coords.r), ck_cos(k1, coords.r));
    let (s2, c2) = (ck_sin(k2, coords.theta), ck_cos(k2, coords.theta));
    let u = angular_factors(&coords.phi);
    let mut j = DMatrix::zeros(n + 1, n);
    j[(0, 0)] = -k1 * s1;
    j[(1, 0)] = c1 * c2;
    j[(1, 1)] = -k2 * s1 * s2;
    for i in 2..=n {
        j[(i, 0)] = c1 * s2 * u[i - 2];
        j[(i, 1)] = s1 * c2 * u[i - 2];
        for k in 0..coords.phi.len() {
            // ∂u_i/∂φ_{k+3}: swap one factor for its derivative
            let phi = &coords.phi;
            let s = k + 3;
            let involved = s <= i || (i < n && s == i + 1);
            if !involved {
                continue;
            }
            let mut prod = 1.0;
            for t in 3..=i.min(n) {
                let p = phi[t - 3];
                prod *= if t == s { p.cos() } else { p.sin() };
            }
            if i < n {
                let p = phi[i - 2];
                prod *= if i + 1 == s { -p.sin() } else { p.cos() };
            }
            j[(i, k + 2)] = s1 * s2 * prod;
        }
    }
    j
}

fn polar_guard(
    kp: KappaPair,
    n: usize,
    chart: PolarChart,
) -> impl Fn(&[f64]) -> bool + Send + Sync {
    move |x: &[f64]| {
        let Ok(c) = GeodesicPolarCoords::from_slice(x) else {
            return false;
        };
        if c.n() != n || check_chart(kp, &c, &chart).is_err() {
            return false;
        }
        let eps = chart.singular_radius;
        if ck_sin(kp.kappa1, c.r).abs() <= eps {
            return false;
        }
        if n >= 3 && ck_sin(kp.kappa2, c.theta).abs() <= eps {
            return false;
        }
        // sin φ_s enters g_φi for s < i ≤ N
        c.phi
            .iter()
            .take(n.saturating_sub(3))
            .all(|p| p.sin().abs() > eps)
    }
}

/// `ds² = dr² + κ2 Sk²_κ1(r) { dθ² + Sk²_κ2(θ) Σ_i (∏_{s<i} sin² φ_s) dφ_i² }`.
pub fn metric_polar(kp: KappaPair, n: usize) -> Result<MetricField> {
    metric_polar_with(kp, n, PolarChart::default())
}

pub fn metric_polar_with(kp: KappaPair, n: usize, chart: PolarChart) -> Result<MetricField> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank-one spaces need N ≥ 2, got {n}"
        )));
    }
    let label = format!("CK polar metric N={n} κ=({}, {})", kp.kappa1, kp.kappa2);
    let field = MetricField::diagonal(
        n,
        label,
        move |x, d| {
            let s1 = ck_sin(kp.kappa1, x[0]);
            let s2 = ck_sin(kp.kappa2, x[1]);
            d[0] = 1.0;
            let mut w = kp.kappa2 * s1 * s1;
            d[1] = w;
            w *= s2 * s2;
            for i in 2..n {
                d[i] = w;
                w *= x[i].sin().powi(2);
            }
        },
        polar_guard(kp, n, chart),
    );
    Ok(if kp.kappa2 == 0.0 {
        field.flagged_degenerate()
    } else {
        field
    })
}

/// `(1/κ1)(dx0² + κ1 dx1² + κ1κ2 Σ dx_j²)` pulled back through [`embed`].
pub fn metric_ambient_pullback(kp: KappaPair, n: usize) -> Result<MetricField> {
    if kp.kappa1 == 0.0 {
        return Err(Error::FlatCase);
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank-one spaces need N ≥ 2, got {n}"
        )));
    }
    let w = DMatrix::from_diagonal(&DVector::from_vec(kp.ambient_weights(n))) / kp.kappa1;
    let label = format!("CK ambient pullback N={n} κ=({}, {})", kp.kappa1, kp.kappa2);
    let field = MetricField::new(
        n,
        label,
        move |x| {
            let c = GeodesicPolarCoords::from_slice(x).expect("dimension checked by caller");
            let j = embedding_jacobian(&c, kp);
            j.transpose() * &w * j
        },
        polar_guard(kp, n, PolarChart::default()),
    );
    Ok(if kp.kappa2 == 0.0 {
        field.flagged_degenerate()
    } else {
        field
    })
}

/// The nine spaces reached by the signs of (κ1, κ2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CkSpace {
    Spherical,
    Euclidean,
    Hyperbolic,
    AntiDeSitter,
    Minkowskian,
    DeSitter,
    #[serde(rename = "oscillating-NH")]
    OscillatingNH,
    Galilean,
    #[serde(rename = "expanding-NH")]
    ExpandingNH,
}

impl CkSpace {
    pub const ALL: [CkSpace; 9] = [
        CkSpace::Spherical,
        CkSpace::Euclidean,
        CkSpace::Hyperbolic,
        CkSpace::OscillatingNH,
        CkSpace::Galilean,
        CkSpace::ExpandingNH,
        CkSpace::AntiDeSitter,
        CkSpace::Minkowskian,
        CkSpace::DeSitter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CkSpace::Spherical => "spherical",
            CkSpace::Euclidean => "euclidean",
            CkSpace::Hyperbolic => "hyperbolic",
            CkSpace::AntiDeSitter => "anti-de-sitter",
            CkSpace::Minkowskian => "minkowskian",
            CkSpace::DeSitter => "de-sitter",
            CkSpace::OscillatingNH => "oscillating-NH",
            CkSpace::Galilean => "galilean",
            CkSpace::ExpandingNH => "expanding-NH",
        }
    }

    /// Representative unit sign pair.
    pub fn unit_kappa(self) -> KappaPair {
        let (k1, k2) = match self {
            CkSpace::Spherical => (1.0, 1.0),
            CkSpace::Euclidean => (0.0, 1.0),
            CkSpace::Hyperbolic => (-1.0, 1.0),
            CkSpace::OscillatingNH => (1.0, 0.0),
            CkSpace::Galilean => (0.0, 0.0),
            CkSpace::ExpandingNH => (-1.0, 0.0),
            CkSpace::AntiDeSitter => (1.0, -1.0),
            CkSpace::Minkowskian => (0.0, -1.0),
            CkSpace::DeSitter => (-1.0, -1.0),
        };
        KappaPair::new(k1, k2)
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

pub fn classify_space(kp: KappaPair) -> CkSpace {
    match (sign(kp.kappa1), sign(kp.kappa2)) {
        (1, 1) => CkSpace::Spherical,
        (0, 1) => CkSpace::Euclidean,
        (-1, 1) => CkSpace::Hyperbolic,
        (1, 0) => CkSpace::OscillatingNH,
        (0, 0) => CkSpace::Galilean,
        (-1, 0) => CkSpace::ExpandingNH,
        (1, -1) => CkSpace::AntiDeSitter,
        (0, -1) => CkSpace::Minkowskian,
        _ => CkSpace::DeSitter,
    }
}

/// Diagonal of the polar metric as text, for unit sign pairs.
///
/// Uses `sin^2 r`, `r^2`, `sinh^2 r` for `Sk²_κ1(r)` and the analogous forms
/// in θ; angles are `phi` when N = 3 and `phi3, phi4, …` otherwise.
pub fn metric_diagonal_symbolic(kp: KappaPair, n: usize) -> Vec<String> {
    let sq = |k: i8, v: &str| match k {
        1 => format!("sin^2 {v}"),
        0 => format!("{v}^2"),
        _ => format!("sinh^2 {v}"),
    };
    let mut out = vec!["1".to_string()];
    let k2 = sign(kp.kappa2);
    if k2 == 0 {
        out.extend(std::iter::repeat_n("0".to_string(), n - 1));
        return out;
    }
    let prefix = if k2 < 0 { "-" } else { "" };
    let radial = sq(sign(kp.kappa1), "r");
    out.push(format!("{prefix}{radial}"));
    let angle = |s: usize| {
        if n == 3 {
            "phi".to_string()
        } else {
            format!("phi{s}")
        }
    };
    let mut factors = vec![radial, sq(k2, "theta")];
    for i in 3..=n {
        out.push(format!("{prefix}{}", factors.join(" ")));
        factors.push(sq(1, &angle(i)));
    }
    out
}

/// One row of the constant-curvature catalog.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kappa1: f64,
    pub kappa2: f64,
    pub metric_diagonal_symbolic: Vec<String>,
    #[serde(rename = "K_sectional")]
    pub k_sectional: f64,
    #[serde(rename = "K_scalar")]
    pub k_scalar: f64,
}

/// The nine unit-sign spaces with their closed-form curvatures `K_ij = κ1`, `K = N(N−1)κ1`.
pub fn catalog(n: usize) -> Vec<CatalogEntry> {
    CkSpace::ALL
        .iter()
        .map(|&s| {
            let kp = s.unit_kappa();
            CatalogEntry {
                name: s.name(),
                kappa1: kp.kappa1,
                kappa2: kp.kappa2,
                metric_diagonal_symbolic: metric_diagonal_symbolic(kp, n),
                k_sectional: kp.kappa1,
                k_scalar: (n * (n - 1)) as f64 * kp.kappa1,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn origin_and_quarter_circle() {
        let kp = KappaPair::new(1.0, 1.0);
        let o = embed(&GeodesicPolarCoords::new(0.0, 0.4, vec![1.0]), kp).unwrap();
        assert_eq!(o.x, vec![1.0, 0.0, 0.0, 0.0]);
        let p = embed(&GeodesicPolarCoords::new(PI / 2.0, 0.0, vec![0.3]), kp).unwrap();
        let expected = [0.0, 1.0, 0.0, 0.0];
        for (a, b) in p.x.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn chart_violations() {
        let kp = KappaPair::new(1.0, 1.0);
        assert!(embed(&GeodesicPolarCoords::new(PI, 0.2, vec![0.1]), kp).is_err());
        assert!(embed(&GeodesicPolarCoords::new(-0.1, 0.2, vec![0.1]), kp).is_err());
        assert!(embed(&GeodesicPolarCoords::new(1.0, 3.5, vec![0.1]), kp).is_err());
        let ads = KappaPair::new(1.0, -1.0);
        assert!(embed(&GeodesicPolarCoords::new(1.0, 60.0, vec![0.1]), ads).is_err());
        assert!(embed(&GeodesicPolarCoords::new(1.0, 6.0, vec![0.1]), ads).is_ok());
    }

    #[test]
    fn closed_form_matches_group_action() {
        for kp in CkSpace::ALL.map(CkSpace::unit_kappa) {
            for phi in [vec![0.7], vec![0.7, 1.9], vec![0.3, 2.2, 4.0]] {
                let c = GeodesicPolarCoords::new(0.8, 0.6, phi);
                let a = embed(&c, kp).unwrap();
                let b = embed_by_group_action(&c, kp).unwrap();
                for (x, y) in a.x.iter().zip(&b.x) {
                    assert!((x - y).abs() < 1e-14, "{kp:?}");
                }
            }
        }
    }

    #[test]
    fn table_metrics_at_a_point() {
        let (r, th) = (0.9, 0.6);
        let x = [r, th, 1.1];
        let s = metric_polar(KappaPair::new(1.0, 1.0), 3)
            .unwrap()
            .evaluate(&x);
        assert!((s[(1, 1)] - r.sin().powi(2)).abs() < 1e-15);
        assert!((s[(2, 2)] - (r.sin() * th.sin()).powi(2)).abs() < 1e-15);
        let m = metric_polar(KappaPair::new(0.0, -1.0), 3)
            .unwrap()
            .evaluate(&x);
        assert!((m[(1, 1)] + r * r).abs() < 1e-15);
        assert!((m[(2, 2)] + (r * th.sinh()).powi(2)).abs() < 1e-14);
        let nh = metric_polar(KappaPair::new(1.0, 0.0), 3).unwrap();
        assert!(nh.is_degenerate());
        let g = nh.evaluate(&x);
        assert_eq!((g[(0, 0)], g[(1, 1)], g[(2, 2)]), (1.0, 0.0, 0.0));
    }

    #[test]
    fn pullback_flat_case_errors() {
        assert_eq!(
            metric_ambient_pullback(KappaPair::new(0.0, 1.0), 3).unwrap_err(),
            Error::FlatCase
        );
    }

    #[test]
    fn classification() {
        assert_eq!(classify_space(KappaPair::new(2.0, 0.5)), CkSpace::Spherical);
        assert_eq!(
            classify_space(KappaPair::new(-1.0, 0.0)),
            CkSpace::ExpandingNH
        );
        assert_eq!(
            classify_space(KappaPair::new(0.0, -1.0)),
            CkSpace::Minkowskian
        );
        for s in CkSpace::ALL {
            assert_eq!(classify_space(s.unit_kappa()), s);
        }
    }

    #[test]
    fn symbolic_rows() {
        assert_eq!(
            metric_diagonal_symbolic(KappaPair::new(-1.0, -1.0), 3),
            vec!["1", "-sinh^2 r", "-sinh^2 r sinh^2 theta"]
        );
        assert_eq!(
            metric_diagonal_symbolic(KappaPair::new(1.0, 1.0), 4),
            vec![
                "1",
                "sin^2 r",
                "sin^2 r sin^2 theta",
                "sin^2 r sin^2 theta sin^2 phi3"
            ]
        );
        assert_eq!(
            metric_diagonal_symbolic(KappaPair::new(0.0, 0.0), 3),
            vec!["1", "0", "0"]
        );
    }
}
