//! Metric fields: the contract between geometry producers and the curvature engine.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

type EvalFn = dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync;
type GuardFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A symmetric matrix-valued function on a coordinate chart.
///
/// Evaluation is pure; clones share the underlying closures.
#[derive(Clone)]
pub struct MetricField {
    dimension: usize,
    label: String,
    degenerate: bool,
    evaluate: Arc<EvalFn>,
    guard: Arc<GuardFn>,
}

impl MetricField {
    pub fn new<E, G>(dimension: usize, label: impl Into<String>, evaluate: E, guard: G) -> Self
    where
        E: Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
        G: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        Self {
            dimension,
            label: label.into(),
            degenerate: false,
            evaluate: Arc::new(evaluate),
            guard: Arc::new(guard),
        }
    }

    /// Diagonal metric from a closure filling the diagonal.
    pub fn diagonal<D, G>(dimension: usize, label: impl Into<String>, diag: D, guard: G) -> Self
    where
        D: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
        G: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        Self::new(
            dimension,
            label,
            move |x| {
                let mut d = vec![0.0; dimension];
                diag(x, &mut d);
                DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d))
            },
            guard,
        )
    }

    /// Constant metric, valid everywhere.
    pub fn constant(matrix: DMatrix<f64>, label: impl Into<String>) -> Self {
        let dim = matrix.nrows();
        Self::new(dim, label, move |_| matrix.clone(), |_| true)
    }

    /// Marks the metric as degenerate everywhere (Newtonian spaces).
    pub fn flagged_degenerate(mut self) -> Self {
        self.degenerate = true;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn evaluate(&self, x: &[f64]) -> DMatrix<f64> {
        debug_assert_eq!(x.len(), self.dimension);
        (self.evaluate)(x)
    }

    /// False near coordinate singularities or outside the chart.
    pub fn in_domain(&self, x: &[f64]) -> bool {
        x.len() == self.dimension && x.iter().all(|v| v.is_finite()) && (self.guard)(x)
    }

    /// The same metric multiplied pointwise by `factor(x)`.
    pub fn conformal<F>(&self, label: impl Into<String>, factor: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let base = self.clone();
        let guard_base = self.clone();
        Self {
            dimension: self.dimension,
            label: label.into(),
            degenerate: self.degenerate,
            evaluate: Arc::new(move |x| base.evaluate(x) * factor(x)),
            guard: Arc::new(move |x| guard_base.in_domain(x)),
        }
    }

    /// Replaces the domain guard, keeping it in conjunction with the old one.
    pub fn restricted<G>(&self, guard: G) -> Self
    where
        G: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        let base = self.clone();
        Self {
            dimension: self.dimension,
            label: self.label.clone(),
            degenerate: self.degenerate,
            evaluate: self.evaluate.clone(),
            guard: Arc::new(move |x| base.in_domain(x) && guard(x)),
        }
    }
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("label", &self.label)
            .field("dimension", &self.dimension)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}
