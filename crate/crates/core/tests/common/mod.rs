#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ckgeo::deform::{polar_change, DeformationParams, PhasePoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

pub fn phase_point(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> PhasePoint {
    let q = (0..n)
        .map(|_| uniform(rng, -half_width, half_width))
        .collect();
    let p = (0..n)
        .map(|_| uniform(rng, -half_width, half_width))
        .collect();
    PhasePoint::new(q, p).unwrap()
}

/// Cartesian point (real chart, positive octant) whose polar image exists.
pub fn chart_point(rng: &mut ChaCha8Rng, params: &DeformationParams) -> (Vec<f64>, Vec<f64>) {
    loop {
        let w: Vec<f64> = if params.lambda2_sq < 0.0 {
            vec![
                uniform(rng, 0.1, 0.35),
                uniform(rng, 0.1, 0.35),
                uniform(rng, 0.55, 0.9),
            ]
        } else {
            (0..3).map(|_| uniform(rng, 0.1, 0.7)).collect()
        };
        if let Ok(y) = polar_change(params, &w) {
            return (w, y.to_vec());
        }
    }
}

/// `max_i |a_i − b_i|`.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Geodesic Hamiltonian restricted to the well-conditioned part of the polar chart:
/// away from the pole, the polar axis and the edge of the Cartesian image.
#[allow(dead_code)]
pub struct WellConditioned<'a> {
    pub inner: &'a ckgeo::deform::GeodesicHamiltonian,
    pub min_radius: f64,
    pub min_axis: f64,
    pub min_margin: f64,
}

impl ckgeo::riemann::Hamiltonian for WellConditioned<'_> {
    fn dimension(&self) -> usize {
        3
    }

    fn value(&self, y: &[f64], p: &[f64]) -> f64 {
        self.inner.value(y, p)
    }

    fn in_domain(&self, y: &[f64]) -> bool {
        let params = self.inner.params();
        self.inner.in_domain(y)
            && y[0] >= self.min_radius
            && ckgeo::trig::ck_sin(params.lambda2_sq, y[1]).abs() >= self.min_axis
            && ckgeo::space::GeodesicPolarCoords::from_slice(y)
                .and_then(|c| ckgeo::deform::chart_margin(params, &c))
                .is_ok_and(|m| m >= self.min_margin)
    }

    fn gradient(&self, y: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
        self.inner.gradient(y, p)
    }
}
