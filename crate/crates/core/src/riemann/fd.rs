//! Fourth-order central difference stencils.

use nalgebra::DMatrix;
use serde::Serialize;

/// How the step for coordinate `x_i` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRule {
    /// `h = max(base, base·|x_i|)`.
    Scaled(f64),
    /// `h = base` regardless of the point.
    Fixed(f64),
}

impl StepRule {
    pub fn at(self, x: f64) -> f64 {
        match self {
            StepRule::Scaled(b) => b.max(b * x.abs()),
            StepRule::Fixed(b) => b,
        }
    }
}

/// Step rules for first derivatives (connection) and second derivatives (curvature).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteDifference {
    pub first: StepRule,
    pub second: StepRule,
}

impl Default for FiniteDifference {
    fn default() -> Self {
        Self {
            first: StepRule::Scaled(1e-5),
            second: StepRule::Scaled(2e-3),
        }
    }
}

// integer weights; every stencil sum is divided by 12 (or 144 when nested)
const D1: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const D2: [(f64, f64); 5] = [
    (-2.0, -1.0),
    (-1.0, 16.0),
    (0.0, -30.0),
    (1.0, 16.0),
    (2.0, -1.0),
];

fn shifted(x: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

fn combine(mut terms: impl Iterator<Item = DMatrix<f64>>) -> DMatrix<f64> {
    let first = terms.next().expect("stencil is non-empty");
    terms.fold(first, |acc, m| acc + m)
}

/// `∂f/∂x_i` for a scalar function.
pub(crate) fn partial<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], i: usize, rule: StepRule) -> f64 {
    let h = rule.at(x[i]);
    D1.iter()
        .map(|&(s, c)| c * f(&shifted(x, &[(i, s * h)])))
        .sum::<f64>()
        / (12.0 * h)
}

/// `∂g/∂x_k` for every k.
pub(crate) fn matrix_gradient<F: Fn(&[f64]) -> DMatrix<f64>>(
    f: F,
    x: &[f64],
    rule: StepRule,
) -> Vec<DMatrix<f64>> {
    (0..x.len())
        .map(|k| {
            let h = rule.at(x[k]);
            combine(D1.iter().map(|&(s, c)| f(&shifted(x, &[(k, s * h)])) * c)) / (12.0 * h)
        })
        .collect()
}

/// `∂²g/∂x_k∂x_l`, indexed `[k][l]`; mixed partials nest the first-derivative stencil.
pub(crate) fn matrix_hessian<F: Fn(&[f64]) -> DMatrix<f64>>(
    f: F,
    x: &[f64],
    rule: StepRule,
) -> Vec<Vec<DMatrix<f64>>> {
    let n = x.len();
    let h: Vec<f64> = x.iter().map(|&v| rule.at(v)).collect();
    let mut out = vec![vec![DMatrix::zeros(0, 0); n]; n];
    for k in 0..n {
        for l in k..n {
            let sum = if k == l {
                combine(
                    D2.iter()
                        .map(|&(s, c)| f(&shifted(x, &[(k, s * h[k])])) * c),
                ) * 12.0
            } else {
                combine(D1.iter().flat_map(|&(s, c)| {
                    let f = &f;
                    let h = &h;
                    D1.iter().map(move |&(t, d)| {
                        f(&shifted(x, &[(k, s * h[k]), (l, t * h[l])])) * (c * d)
                    })
                }))
            };
            let m = sum / (144.0 * h[k] * h[l]);
            out[l][k] = m.clone();
            out[k][l] = m;
        }
    }
    out
}
