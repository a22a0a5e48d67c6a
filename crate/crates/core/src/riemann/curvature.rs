//! Levi-Civita connection, Riemann tensor and sectional/scalar curvature.

use nalgebra::DMatrix;
use serde::Serialize;

use super::fd::{matrix_gradient, matrix_hessian, FiniteDifference};
use crate::exec::{map_slice, Execution};
use crate::{Error, MetricField, Result};

/// Below this `|det g|` the metric is treated as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;
/// Below this `|g_ii g_jj − g_ij²|` a coordinate plane is treated as null.
pub const NULL_PLANE_THRESHOLD: f64 = 1e-10;

/// `Γ^k_ij`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    n: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `Γ^k_ij`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[(k * self.n + i) * self.n + j]
    }

    fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.data[(k * self.n + i) * self.n + j] = v;
    }
}

/// Fully covariant `R_abcd`, with `R_abab` the sectional numerator.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannTensor {
    n: usize,
    data: Vec<f64>,
    metric: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl RiemannTensor {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[((a * self.n + b) * self.n + c) * self.n + d]
    }

    /// Metric at the evaluation point.
    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// `K_ij = R_ijij / (g_ii g_jj − g_ij²)`, `None` on null planes.
    pub fn sectional(&self, i: usize, j: usize) -> Option<f64> {
        let g = &self.metric;
        let den = g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)];
        (den.abs() >= NULL_PLANE_THRESHOLD).then(|| self.get(i, j, i, j) / den)
    }

    /// `K = g^ac g^bd R_abcd`.
    pub fn scalar(&self) -> f64 {
        let gi = &self.inverse;
        let n = self.n;
        let mut k = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let gac = gi[(a, c)];
                    if gac == 0.0 {
                        continue;
                    }
                    for d in 0..n {
                        k += gac * gi[(b, d)] * self.get(a, b, c, d);
                    }
                }
            }
        }
        k
    }

    /// Largest violation of the pair symmetries and the first Bianchi identity.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let r = self.get(a, b, c, d);
                        worst = worst
                            .max((r + self.get(b, a, c, d)).abs())
                            .max((r + self.get(a, b, d, c)).abs())
                            .max((r - self.get(c, d, a, b)).abs())
                            .max((r + self.get(a, c, d, b) + self.get(a, d, b, c)).abs());
                    }
                }
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureMethod {
    FiniteDifference,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionalCurvature {
    pub i: usize,
    pub j: usize,
    /// `None` when the plane is null.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    /// Coordinate planes `i < j` in lexicographic order.
    pub sectional: Vec<SectionalCurvature>,
    pub scalar: f64,
    pub method: CurvatureMethod,
}

impl CurvatureReport {
    pub fn sectional(&self, i: usize, j: usize) -> Option<f64> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.sectional
            .iter()
            .find(|s| s.i == i && s.j == j)
            .and_then(|s| s.value)
    }

    /// Builds a report from known curvature values.
    pub fn closed_form(
        point: Vec<f64>,
        sectional: Vec<((usize, usize), f64)>,
        scalar: f64,
    ) -> Self {
        Self {
            point,
            sectional: sectional
                .into_iter()
                .map(|((i, j), v)| SectionalCurvature {
                    i,
                    j,
                    value: Some(v),
                })
                .collect(),
            scalar,
            method: CurvatureMethod::ClosedForm,
        }
    }
}

fn checked_inverse(metric: &MetricField, x: &[f64]) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if x.len() != metric.dimension() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, metric expects {}",
            x.len(),
            metric.dimension()
        )));
    }
    if !metric.in_domain(x) {
        return Err(Error::Domain(format!(
            "{x:?} rejected by the guard of {}",
            metric.label()
        )));
    }
    let g = metric.evaluate(x);
    let det = g.determinant();
    if metric.is_degenerate() || det.abs() < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateMetric {
            det,
            point: x.to_vec(),
        });
    }
    let gi = g.clone().try_inverse().ok_or(Error::DegenerateMetric {
        det,
        point: x.to_vec(),
    })?;
    Ok((g, gi))
}

fn connection(gi: &DMatrix<f64>, dg: &[DMatrix<f64>]) -> Christoffel {
    let n = gi.nrows();
    let mut out = Christoffel {
        n,
        data: vec![0.0; n * n * n],
    };
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += gi[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                out.set(k, i, j, 0.5 * s);
                out.set(k, j, i, 0.5 * s);
            }
        }
    }
    out
}

pub fn christoffel(metric: &MetricField, x: &[f64]) -> Result<Christoffel> {
    christoffel_with(metric, x, &FiniteDifference::default())
}

pub fn christoffel_with(
    metric: &MetricField,
    x: &[f64],
    fd: &FiniteDifference,
) -> Result<Christoffel> {
    let (_, gi) = checked_inverse(metric, x)?;
    let dg = matrix_gradient(|y| metric.evaluate(y), x, fd.first);
    Ok(connection(&gi, &dg))
}

pub fn riemann_tensor(metric: &MetricField, x: &[f64]) -> Result<RiemannTensor> {
    riemann_tensor_with(metric, x, &FiniteDifference::default())
}

/// `R_abcd = ½(g_ad,bc + g_bc,ad − g_ac,bd − g_bd,ac) + g_mn(Γ^m_bc Γ^n_ad − Γ^m_bd Γ^n_ac)`.
pub fn riemann_tensor_with(
    metric: &MetricField,
    x: &[f64],
    fd: &FiniteDifference,
) -> Result<RiemannTensor> {
    let (g, gi) = checked_inverse(metric, x)?;
    let eval = |y: &[f64]| metric.evaluate(y);
    let gamma = connection(&gi, &matrix_gradient(eval, x, fd.first));
    let h = matrix_hessian(eval, x, fd.second);
    let n = x.len();
    // Γ_{n,ad} = g_nm Γ^m_ad, lowered once
    let mut low = vec![0.0; n * n * n];
    for m in 0..n {
        for a in 0..n {
            for d in 0..n {
                low[(m * n + a) * n + d] = (0..n).map(|k| g[(m, k)] * gamma.get(k, a, d)).sum();
            }
        }
    }
    let lowered = |m: usize, a: usize, d: usize| low[(m * n + a) * n + d];
    let mut data = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let second = 0.5
                        * (h[b][c][(a, d)] + h[a][d][(b, c)] - h[b][d][(a, c)] - h[a][c][(b, d)]);
                    let quad: f64 = (0..n)
                        .map(|m| {
                            gamma.get(m, b, c) * lowered(m, a, d)
                                - gamma.get(m, b, d) * lowered(m, a, c)
                        })
                        .sum();
                    data[((a * n + b) * n + c) * n + d] = second + quad;
                }
            }
        }
    }
    Ok(RiemannTensor {
        n,
        data,
        metric: g,
        inverse: gi,
    })
}

pub fn curvature(metric: &MetricField, x: &[f64]) -> Result<CurvatureReport> {
    curvature_with(metric, x, &FiniteDifference::default())
}

pub fn curvature_with(
    metric: &MetricField,
    x: &[f64],
    fd: &FiniteDifference,
) -> Result<CurvatureReport> {
    let r = riemann_tensor_with(metric, x, fd)?;
    let n = x.len();
    let sectional = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| SectionalCurvature {
            i,
            j,
            value: r.sectional(i, j),
        })
        .collect();
    Ok(CurvatureReport {
        point: x.to_vec(),
        sectional,
        scalar: r.scalar(),
        method: CurvatureMethod::FiniteDifference,
    })
}

/// Curvature at many points; results are in input order.
pub fn curvature_batch(
    metric: &MetricField,
    points: &[Vec<f64>],
    exec: Execution,
) -> Vec<Result<CurvatureReport>> {
    map_slice(points, exec, |p| curvature(metric, p))
}
