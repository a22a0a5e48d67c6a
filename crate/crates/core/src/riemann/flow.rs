//! Implicit-midpoint integration of Hamilton's equations.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use super::fd::{partial, StepRule};
use crate::{Error, Result};

/// A Hamiltonian on `T*M`; the gradient defaults to 4th-order finite differences.
pub trait Hamiltonian: Sync {
    fn dimension(&self) -> usize;

    fn value(&self, q: &[f64], p: &[f64]) -> f64;

    /// Chart test for configuration points.
    fn in_domain(&self, _q: &[f64]) -> bool {
        true
    }

    fn gradient_step(&self) -> StepRule {
        StepRule::Scaled(1e-3)
    }

    /// `(∂H/∂q, ∂H/∂p)`.
    fn gradient(&self, q: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.dimension();
        let rule = self.gradient_step();
        let dq = (0..n)
            .map(|i| partial(|y| self.value(y, p), q, i, rule))
            .collect();
        let dp = (0..n)
            .map(|i| partial(|y| self.value(q, y), p, i, rule))
            .collect();
        (dq, dp)
    }
}

type ValueFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;
type GuardFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A Hamiltonian given by a closure, with an optional domain guard.
#[derive(Clone)]
pub struct FnHamiltonian {
    dimension: usize,
    value: Arc<ValueFn>,
    guard: Option<Arc<GuardFn>>,
}

impl FnHamiltonian {
    pub fn new<F>(dimension: usize, value: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            dimension,
            value: Arc::new(value),
            guard: None,
        }
    }

    pub fn with_guard<G>(mut self, guard: G) -> Self
    where
        G: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        self.guard = Some(Arc::new(guard));
        self
    }
}

impl std::fmt::Debug for FnHamiltonian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnHamiltonian")
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl Hamiltonian for FnHamiltonian {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn value(&self, q: &[f64], p: &[f64]) -> f64 {
        (self.value)(q, p)
    }

    fn in_domain(&self, q: &[f64]) -> bool {
        self.guard.as_ref().is_none_or(|g| g(q))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowState {
    pub coords: Vec<f64>,
    pub momenta: Vec<f64>,
    pub time: f64,
    pub hamiltonian_value: f64,
}

impl FlowState {
    pub fn new<H: Hamiltonian + ?Sized>(
        h: &H,
        coords: Vec<f64>,
        momenta: Vec<f64>,
        time: f64,
    ) -> Self {
        let hamiltonian_value = h.value(&coords, &momenta);
        Self {
            coords,
            momenta,
            time,
            hamiltonian_value,
        }
    }

    /// Same point with momenta reversed.
    pub fn flipped<H: Hamiltonian + ?Sized>(&self, h: &H) -> Self {
        Self::new(
            h,
            self.coords.clone(),
            self.momenta.iter().map(|p| -p).collect(),
            self.time,
        )
    }
}

/// Step scheme. Both are symmetric and symplectic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Implicit midpoint rule, 2nd order.
    #[default]
    ImplicitMidpoint,
    /// Triple-jump composition of midpoint steps, 4th order.
    Yoshida4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub dt: f64,
    pub steps: usize,
    pub integrator: Integrator,
    /// Fixed-point tolerance on `max|Δz| / max(1, max|z|)`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            steps: 10_000,
            integrator: Integrator::ImplicitMidpoint,
            tolerance: 1e-13,
            max_iterations: 50,
        }
    }
}

/// The states produced before the integration stopped, and why it stopped early.
#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub states: Vec<FlowState>,
    pub stopped: Option<Error>,
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// One implicit-midpoint step `z₁ = z₀ + dt·X_H((z₀ + z₁)/2)`; `dt` may be negative.
fn midpoint_step<H: Hamiltonian + ?Sized>(
    h: &H,
    s: &FlowState,
    dt: f64,
    cfg: &FlowConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = s.coords.len();
    let field = |q: &[f64], p: &[f64]| {
        let (dq, dp) = h.gradient(q, p);
        (dp, dq.into_iter().map(|v| -v).collect::<Vec<_>>())
    };
    let (vq, vp) = field(&s.coords, &s.momenta);
    let mut q1: Vec<f64> = (0..n).map(|i| s.coords[i] + dt * vq[i]).collect();
    let mut p1: Vec<f64> = (0..n).map(|i| s.momenta[i] + dt * vp[i]).collect();
    let mut residual = f64::INFINITY;
    for _ in 0..cfg.max_iterations {
        let qm: Vec<f64> = (0..n).map(|i| 0.5 * (s.coords[i] + q1[i])).collect();
        let pm: Vec<f64> = (0..n).map(|i| 0.5 * (s.momenta[i] + p1[i])).collect();
        if !h.in_domain(&qm) {
            return Err(Error::LeftDomain {
                time: s.time,
                steps: 0,
            });
        }
        let (vq, vp) = field(&qm, &pm);
        let nq: Vec<f64> = (0..n).map(|i| s.coords[i] + dt * vq[i]).collect();
        let np: Vec<f64> = (0..n).map(|i| s.momenta[i] + dt * vp[i]).collect();
        let diff: Vec<f64> = nq
            .iter()
            .zip(&q1)
            .chain(np.iter().zip(&p1))
            .map(|(a, b)| a - b)
            .collect();
        let scale = norm_inf(&nq).max(norm_inf(&np)).max(1.0);
        residual = norm_inf(&diff) / scale;
        q1 = nq;
        p1 = np;
        if !residual.is_finite() {
            break;
        }
        if residual <= cfg.tolerance {
            return Ok((q1, p1));
        }
    }
    Err(Error::NonConvergence {
        time: s.time,
        residual,
    })
}

fn step<H: Hamiltonian + ?Sized>(
    h: &H,
    s: &FlowState,
    cfg: &FlowConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    match cfg.integrator {
        Integrator::ImplicitMidpoint => midpoint_step(h, s, cfg.dt, cfg),
        Integrator::Yoshida4 => {
            let c = 2f64.cbrt();
            let outer = 1.0 / (2.0 - c);
            let inner = -c / (2.0 - c);
            let mut cur = s.clone();
            for w in [outer, inner, outer] {
                let (q, p) = midpoint_step(h, &cur, w * cfg.dt, cfg)?;
                if !h.in_domain(&q) {
                    return Err(Error::LeftDomain {
                        time: s.time,
                        steps: 0,
                    });
                }
                cur = FlowState {
                    coords: q,
                    momenta: p,
                    time: cur.time,
                    hamiltonian_value: f64::NAN,
                };
            }
            Ok((cur.coords, cur.momenta))
        }
    }
}

/// Integrates until `cfg.steps` steps are done or a step fails.
pub fn flow_until_failure<H: Hamiltonian + ?Sized>(
    h: &H,
    initial: FlowState,
    cfg: &FlowConfig,
) -> FlowOutcome {
    let mut states = Vec::with_capacity(cfg.steps + 1);
    if cfg.dt.is_nan() || cfg.dt <= 0.0 {
        return FlowOutcome {
            states,
            stopped: Some(Error::InvalidArgument(format!(
                "dt = {} must be positive",
                cfg.dt
            ))),
        };
    }
    if initial.coords.len() != h.dimension() || initial.momenta.len() != h.dimension() {
        return FlowOutcome {
            states,
            stopped: Some(Error::InvalidArgument(
                "state dimension does not match the Hamiltonian".into(),
            )),
        };
    }
    if !h.in_domain(&initial.coords) {
        return FlowOutcome {
            states,
            stopped: Some(Error::LeftDomain {
                time: initial.time,
                steps: 0,
            }),
        };
    }
    let start = initial.time;
    states.push(FlowState::new(
        h,
        initial.coords,
        initial.momenta,
        initial.time,
    ));
    for k in 1..=cfg.steps {
        let last = states.last().expect("initial state pushed");
        let step = step(h, last, cfg).and_then(|(q, p)| {
            let next = FlowState::new(h, q, p, start + k as f64 * cfg.dt);
            if h.in_domain(&next.coords) && next.hamiltonian_value.is_finite() {
                Ok(next)
            } else {
                Err(Error::LeftDomain {
                    time: last.time,
                    steps: k - 1,
                })
            }
        });
        match step {
            Ok(s) => states.push(s),
            Err(Error::LeftDomain { time, .. }) => {
                return FlowOutcome {
                    states,
                    stopped: Some(Error::LeftDomain { time, steps: k - 1 }),
                };
            }
            Err(e) => {
                return FlowOutcome {
                    states,
                    stopped: Some(e),
                }
            }
        }
    }
    FlowOutcome {
        states,
        stopped: None,
    }
}

/// Integrates `steps` implicit-midpoint steps of size `dt`; returns `steps + 1` states.
pub fn geodesic_flow<H: Hamiltonian + ?Sized>(
    h: &H,
    initial: FlowState,
    dt: f64,
    steps: usize,
) -> Result<Vec<FlowState>> {
    let cfg = FlowConfig {
        dt,
        steps,
        ..FlowConfig::default()
    };
    let out = flow_until_failure(h, initial, &cfg);
    match out.stopped {
        None => Ok(out.states),
        Some(e) => Err(e),
    }
}

/// A named column computed from each state.
pub type Column<'a> = (&'a str, &'a dyn Fn(&FlowState) -> f64);

/// CSV with columns `t, q1.., p1.., H` followed by `extra`.
pub fn trajectory_csv(states: &[FlowState], extra: &[Column<'_>]) -> String {
    let n = states.first().map_or(0, |s| s.coords.len());
    let mut out = String::from("t");
    for i in 1..=n {
        let _ = write!(out, ",q{i}");
    }
    for i in 1..=n {
        let _ = write!(out, ",p{i}");
    }
    out.push_str(",H");
    for (name, _) in extra {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    for s in states {
        let _ = write!(out, "{}", s.time);
        for v in s.coords.iter().chain(&s.momenta) {
            let _ = write!(out, ",{v}");
        }
        let _ = write!(out, ",{}", s.hamiltonian_value);
        for (_, f) in extra {
            let _ = write!(out, ",{}", f(s));
        }
        out.push('\n');
    }
    out
}
