use std::hint::black_box;

use ckgeo::algebra::sweep_signs;
use ckgeo::deform::{bracket_suite, geodesic_hamiltonian, DeformationParams, PhasePoint, Profile};
use ckgeo::exec::map_slice;
use ckgeo::riemann::{curvature_batch, geodesic_flow, FlowState};
use ckgeo::space::{metric_polar, KappaPair};
use ckgeo::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sign_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_signs_n5");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sweep_signs(black_box(5), exec)));
    }
    group.finish();
}

fn curvature_points(c: &mut Criterion) {
    let metric = metric_polar(KappaPair::new(-1.0, -1.0), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points: Vec<Vec<f64>> = (0..200)
        .map(|_| {
            vec![
                rng.random_range(0.2..2.0),
                rng.random_range(0.2..2.0),
                rng.random_range(0.0..6.0),
            ]
        })
        .collect();
    let mut group = c.benchmark_group("curvature_batch_200");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| curvature_batch(&metric, black_box(&points), exec))
        });
    }
    group.finish();
}

fn bracket_grid(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("bracket_suite");
    for n in [2, 4] {
        let points: Vec<PhasePoint> = (0..200)
            .map(|_| {
                let mut side = || {
                    (0..n)
                        .map(|_| rng.random_range(-1.0..1.0))
                        .collect::<Vec<f64>>()
                };
                let q = side();
                PhasePoint::new(q, side()).unwrap()
            })
            .collect();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &points, |b, pts| {
                b.iter(|| bracket_suite(0.5, pts, exec))
            });
        }
    }
    group.finish();
}

fn trajectory_ensemble(c: &mut Criterion) {
    let h =
        geodesic_hamiltonian(&DeformationParams::new(1.0, 1.0, Profile::one()).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let starts: Vec<(Vec<f64>, Vec<f64>)> = (0..16)
        .map(|_| {
            let y = vec![
                rng.random_range(0.6..0.9),
                rng.random_range(0.8..1.4),
                rng.random_range(0.0..6.0),
            ];
            let p = (0..3).map(|_| rng.random_range(-0.05..0.05)).collect();
            (y, p)
        })
        .collect();
    let mut group = c.benchmark_group("trajectory_ensemble_16x500");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_slice(&starts, exec, |(y, p)| {
                    geodesic_flow(&h, FlowState::new(&h, y.clone(), p.clone(), 0.0), 1e-3, 500)
                        .map(|s| s.len())
                })
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    sign_sweep,
    curvature_points,
    bracket_grid,
    trajectory_ensemble
);
criterion_main!(benches);
