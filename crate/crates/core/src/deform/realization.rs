//! n-site symplectic realizations of the non-standard deformation of sl(2).
//!
//! The Poisson brackets are `{J₃, J₊} = 2J₊ cosh zJ₋`, `{J₃, J₋} = −2 sinh(zJ₋)/z`,
//! `{J₋, J₊} = 4J₃`, and the Casimir is `C = sinh(zJ₋)/z · J₊ − J₃²`.

use serde::Serialize;

use crate::riemann::StepRule;
use crate::trig::sinhc;
use crate::{Error, Result};

/// Canonical coordinates and momenta.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhasePoint {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates but {} momenta",
                q.len(),
                p.len()
            )));
        }
        Ok(Self { q, p })
    }

    pub fn sites(&self) -> usize {
        self.q.len()
    }

    /// The sub-chain on sites `range` (0-based).
    pub fn sub_chain(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            q: self.q[range.clone()].to_vec(),
            p: self.p[range].to_vec(),
        }
    }
}

/// Values of `(J₋, J₊, J₃)` at a phase point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorTriple {
    pub j_minus: f64,
    pub j_plus: f64,
    pub j_three: f64,
}

/// Site prefactors `sinhc(z s_i) · exp(−z Σ_{j<i} s_j + z Σ_{j>i} s_j)` with `s_i = σ_i q_i²`.
pub fn site_prefactors(z: f64, squares: &[f64]) -> Vec<f64> {
    let total: f64 = squares.iter().sum();
    let mut before = 0.0;
    squares
        .iter()
        .map(|&s| {
            let after = total - before - s;
            let v = sinhc(z * s) * (z * (after - before)).exp();
            before += s;
            v
        })
        .collect()
}

fn check_signs(signs: &[f64], n: usize) -> Result<()> {
    if signs.len() != n || signs.iter().any(|s| s.abs() != 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need {n} site signs of ±1, got {signs:?}"
        )));
    }
    Ok(())
}

/// Realization on the real chart `q_i = √σ_i w_i`, with `pt` holding `(w, p_w)`.
///
/// For `σ_i = −1` the physical coordinate is imaginary; written in the real
/// variables the generators stay real and the brackets are unchanged.
pub fn realization_signed(z: f64, signs: &[f64], pt: &PhasePoint) -> Result<GeneratorTriple> {
    check_signs(signs, pt.sites())?;
    let squares: Vec<f64> = pt.q.iter().zip(signs).map(|(w, s)| s * w * w).collect();
    let pre = site_prefactors(z, &squares);
    let mut t = GeneratorTriple {
        j_minus: squares.iter().sum(),
        j_plus: 0.0,
        j_three: 0.0,
    };
    for i in 0..pt.sites() {
        t.j_plus += pre[i] * signs[i] * pt.p[i] * pt.p[i];
        t.j_three += pre[i] * pt.q[i] * pt.p[i];
    }
    Ok(t)
}

/// The n-site realization obtained by iterating the coproduct, `n = pt.sites()`.
pub fn realization(z: f64, pt: &PhasePoint) -> GeneratorTriple {
    let signs = vec![1.0; pt.sites()];
    realization_signed(z, &signs, pt).expect("unit signs are valid")
}

/// `sinh(zJ₋)/z · J₊ − J₃²`.
pub fn casimir_of(z: f64, t: &GeneratorTriple) -> f64 {
    t.j_minus * sinhc(z * t.j_minus) * t.j_plus - t.j_three * t.j_three
}

pub fn casimir(z: f64, pt: &PhasePoint) -> f64 {
    casimir_of(z, &realization(z, pt))
}

pub fn casimir_signed(z: f64, signs: &[f64], pt: &PhasePoint) -> Result<f64> {
    Ok(casimir_of(z, &realization_signed(z, signs, pt)?))
}

/// Two-site Casimir in factored form, `sinhc(zq₁²) sinhc(zq₂²) e^{−zq₁²} e^{zq₂²} (q₁p₂ − q₂p₁)²`.
pub fn casimir_two_site_closed_form(z: f64, pt: &PhasePoint) -> Result<f64> {
    if pt.sites() != 2 {
        return Err(Error::InvalidArgument(format!(
            "two-site form needs 2 sites, got {}",
            pt.sites()
        )));
    }
    let (s1, s2) = (pt.q[0] * pt.q[0], pt.q[1] * pt.q[1]);
    let l = pt.q[0] * pt.p[1] - pt.q[1] * pt.p[0];
    Ok(sinhc(z * s1) * sinhc(z * s2) * (z * (s2 - s1)).exp() * l * l)
}

/// `Σ_i (∂f/∂q_i ∂g/∂p_i − ∂g/∂q_i ∂f/∂p_i)` by 4th-order central differences.
pub fn canonical_poisson<F, G>(f: F, g: G, pt: &PhasePoint) -> f64
where
    F: Fn(&PhasePoint) -> f64,
    G: Fn(&PhasePoint) -> f64,
{
    canonical_poisson_with(f, g, pt, StepRule::Scaled(1e-3))
}

pub fn canonical_poisson_with<F, G>(f: F, g: G, pt: &PhasePoint, rule: StepRule) -> f64
where
    F: Fn(&PhasePoint) -> f64,
    G: Fn(&PhasePoint) -> f64,
{
    let n = pt.sites();
    let d = |h: &dyn Fn(&PhasePoint) -> f64, i: usize, momentum: bool| {
        let x = if momentum { pt.p[i] } else { pt.q[i] };
        let step = rule.at(x);
        let at = |s: f64| {
            let mut y = pt.clone();
            if momentum {
                y.p[i] += s * step;
            } else {
                y.q[i] += s * step;
            }
            h(&y)
        };
        (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * step)
    };
    (0..n)
        .map(|i| d(&f, i, false) * d(&g, i, true) - d(&g, i, false) * d(&f, i, true))
        .sum()
}

/// Residuals of the three defining brackets at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketResiduals {
    /// `{J₃, J₊} − 2J₊ cosh zJ₋`
    pub three_plus: f64,
    /// `{J₃, J₋} + 2 sinh(zJ₋)/z`
    pub three_minus: f64,
    /// `{J₋, J₊} − 4J₃`
    pub minus_plus: f64,
    /// `max_a |{C, J_a}|`
    pub casimir: f64,
}

impl BracketResiduals {
    pub fn max(&self) -> f64 {
        [
            self.three_plus,
            self.three_minus,
            self.minus_plus,
            self.casimir,
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn bracket_residuals(z: f64, pt: &PhasePoint) -> BracketResiduals {
    let jm = |x: &PhasePoint| realization(z, x).j_minus;
    let jp = |x: &PhasePoint| realization(z, x).j_plus;
    let j3 = |x: &PhasePoint| realization(z, x).j_three;
    let c = |x: &PhasePoint| casimir(z, x);
    let t = realization(z, pt);
    let x = z * t.j_minus;
    BracketResiduals {
        three_plus: canonical_poisson(j3, jp, pt) - 2.0 * t.j_plus * x.cosh(),
        three_minus: canonical_poisson(j3, jm, pt) + 2.0 * t.j_minus * sinhc(x),
        minus_plus: canonical_poisson(jm, jp, pt) - 4.0 * t.j_three,
        casimir: [
            canonical_poisson(c, jm, pt),
            canonical_poisson(c, jp, pt),
            canonical_poisson(c, j3, pt),
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(q: &[f64], p: &[f64]) -> PhasePoint {
        PhasePoint::new(q.to_vec(), p.to_vec()).unwrap()
    }

    #[test]
    fn classical_limit() {
        let x = pt(&[0.3, -0.5, 0.9], &[1.1, 0.2, -0.4]);
        let t = realization(0.0, &x);
        assert!((t.j_minus - (0.09 + 0.25 + 0.81)).abs() < 1e-15);
        assert!((t.j_plus - (1.21 + 0.04 + 0.16)).abs() < 1e-15);
        assert!((t.j_three - (0.33 - 0.1 - 0.36)).abs() < 1e-15);
    }

    #[test]
    fn one_site_casimir_vanishes() {
        for (q, p) in [(0.0, 1.0), (0.4, -2.0), (1.3, 0.7)] {
            assert!(casimir(0.7, &pt(&[q], &[p])).abs() < 1e-13);
        }
    }

    #[test]
    fn two_site_matches_printed_generators() {
        let (z, q, p) = (0.3, [0.7, -0.2], [0.1, 0.9]);
        let sc = |s: f64| (z * s).sinh() / (z * s);
        let (s1, s2) = (q[0] * q[0], q[1] * q[1]);
        let jp = sc(s1) * (z * s2).exp() * p[0] * p[0] + sc(s2) * (-z * s1).exp() * p[1] * p[1];
        let j3 = sc(s1) * (z * s2).exp() * q[0] * p[0] + sc(s2) * (-z * s1).exp() * q[1] * p[1];
        let t = realization(z, &pt(&q, &p));
        assert!((t.j_plus - jp).abs() < 1e-14);
        assert!((t.j_three - j3).abs() < 1e-14);
    }

    #[test]
    fn zero_coordinate_is_regular() {
        let t = realization(0.5, &pt(&[0.0, 0.4], &[1.0, 1.0]));
        assert!(t.j_plus.is_finite() && t.j_three.is_finite());
    }

    #[test]
    fn canonical_pair() {
        let x = pt(&[0.2, 0.3], &[0.5, -0.1]);
        let b = canonical_poisson(|y| y.q[1], |y| y.p[1], &x);
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn signed_chart_keeps_brackets() {
        let x = pt(&[0.3, 0.5, 0.6], &[0.4, -0.7, 0.2]);
        let signs = [-1.0, -1.0, 1.0];
        let (z, jm, jp) = (
            0.4,
            |y: &PhasePoint| realization_signed(0.4, &signs, y).unwrap().j_minus,
            |y: &PhasePoint| realization_signed(0.4, &signs, y).unwrap().j_plus,
        );
        let t = realization_signed(z, &signs, &x).unwrap();
        assert!((canonical_poisson(jm, jp, &x) - 4.0 * t.j_three).abs() < 1e-9);
        assert!(realization_signed(z, &[1.0, 2.0, 1.0], &x).is_err());
    }
}
