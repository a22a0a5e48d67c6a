mod common;

use std::f64::consts::PI;

use ckgeo::algebra::{one_parameter_subgroup, GeneratorIndex};
use ckgeo::riemann::curvature;
use ckgeo::space::*;
use ckgeo::trig::{ck_cos, ck_sin};
use ckgeo::Error;
use nalgebra::{DMatrix, DVector};
use rand_chacha::ChaCha8Rng;

use common::{rng, uniform};

/// A point inside the chart of `kp`, away from coordinate singularities.
fn chart_coords(rng: &mut ChaCha8Rng, kp: KappaPair, n: usize) -> GeodesicPolarCoords {
    let r_max = if kp.kappa1 > 0.0 {
        0.9 * PI / kp.kappa1.sqrt()
    } else {
        2.5
    };
    let r = uniform(rng, 0.1, r_max);
    let theta = if kp.kappa2 > 0.0 {
        uniform(rng, 0.1, PI / kp.kappa2.sqrt() - 0.1)
    } else {
        uniform(rng, 0.1, 2.0)
    };
    let phi = (3..=n)
        .map(|i| {
            if i < n {
                uniform(rng, 0.1, PI - 0.1)
            } else {
                uniform(rng, 0.0, 2.0 * PI)
            }
        })
        .collect();
    GeodesicPolarCoords::new(r, theta, phi)
}

fn all_pairs() -> Vec<KappaPair> {
    CkSpace::ALL.iter().map(|s| s.unit_kappa()).collect()
}

#[test]
fn flat_trigonometry() {
    assert_eq!(ck_cos(0.0, 5.0), 1.0);
    assert_eq!(ck_sin(0.0, 5.0), 5.0);
}

#[test]
fn trigonometric_identity_holds_for_random_arguments() {
    let mut rng = rng(1);
    for _ in 0..1000 {
        let (k, x) = (uniform(&mut rng, -2.0, 2.0), uniform(&mut rng, -3.0, 3.0));
        let (c, s) = (ck_cos(k, x), ck_sin(k, x));
        assert!(
            (c * c + k * s * s - 1.0).abs() <= 1e-14 * (c * c + (k * s * s).abs()).max(1.0),
            "κ={k} x={x}"
        );
    }
}

#[test]
fn origin_is_the_image_of_r_zero() {
    for kp in all_pairs() {
        let p = embed(&GeodesicPolarCoords::new(0.0, 0.4, vec![1.1]), kp).unwrap();
        assert_eq!(p.x, vec![1.0, 0.0, 0.0, 0.0]);
    }
}

#[test]
fn embedded_points_satisfy_the_ambient_constraint() {
    let mut rng = rng(2);
    for n in [3, 4] {
        for kp in all_pairs() {
            for _ in 0..1000 {
                let c = chart_coords(&mut rng, kp, n);
                let residual = embed(&c, kp).unwrap().constraint_residual(kp);
                assert!(residual.abs() < 1e-12, "{kp:?} {c:?}: {residual}");
            }
        }
    }
    let kp = KappaPair::new(-1.0, -1.0);
    let c = chart_coords(&mut rng, kp, 3);
    assert!(embed(&c, kp).unwrap().constraint_residual(kp).abs() < 1e-12);
}

#[test]
fn embedding_matches_the_group_action_on_the_origin() {
    let mut rng = rng(3);
    for kp in all_pairs() {
        for _ in 0..50 {
            let c = chart_coords(&mut rng, kp, 4);
            let (a, b) = (
                embed(&c, kp).unwrap(),
                embed_by_group_action(&c, kp).unwrap(),
            );
            let diff =
                a.x.iter()
                    .zip(&b.x)
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{kp:?} {c:?}: {diff}");
        }
    }
}

#[test]
fn chart_limits_are_enforced() {
    let kp = KappaPair::new(1.0, 1.0);
    assert!(matches!(
        embed(&GeodesicPolarCoords::new(-0.1, 0.5, vec![0.0]), kp),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        embed(&GeodesicPolarCoords::new(3.2, 0.5, vec![0.0]), kp),
        Err(Error::Domain(_))
    ));
    let lorentzian = KappaPair::new(1.0, -1.0);
    assert!(embed(&GeodesicPolarCoords::new(0.5, 60.0, vec![0.0]), lorentzian).is_err());
}

fn diag_at(kp: KappaPair, x: &[f64]) -> Vec<f64> {
    let g = metric_polar(kp, 3).unwrap().evaluate(x);
    assert_eq!(
        g.clone() - DMatrix::from_diagonal(&g.diagonal()),
        DMatrix::zeros(3, 3)
    );
    g.diagonal().iter().copied().collect()
}

#[test]
fn sphere_minkowski_and_newtonian_metrics() {
    let (r, t) = (0.8, 1.1);
    let x = [r, t, 0.3];
    let sphere = diag_at(KappaPair::new(1.0, 1.0), &x);
    let expected = [1.0, r.sin().powi(2), (r.sin() * t.sin()).powi(2)];
    assert!(sphere
        .iter()
        .zip(expected)
        .all(|(a, b)| (a - b).abs() < 1e-15));

    let minkowski = diag_at(KappaPair::new(0.0, -1.0), &x);
    let expected = [1.0, -r * r, -(r * t.sinh()).powi(2)];
    assert!(minkowski
        .iter()
        .zip(expected)
        .all(|(a, b)| (a - b).abs() < 1e-14));

    let nh = metric_polar(KappaPair::new(1.0, 0.0), 3).unwrap();
    assert!(nh.is_degenerate());
    assert_eq!(diag_at(KappaPair::new(1.0, 0.0), &x), vec![1.0, 0.0, 0.0]);
}

#[test]
fn ambient_pullback_agrees_with_the_polar_metric() {
    let mut rng = rng(4);
    for kp in all_pairs().into_iter().filter(|kp| kp.kappa1 != 0.0) {
        let (polar, pullback) = (
            metric_polar(kp, 3).unwrap(),
            metric_ambient_pullback(kp, 3).unwrap(),
        );
        for _ in 0..200 {
            let x = chart_coords(&mut rng, kp, 3).to_vec();
            let d = (polar.evaluate(&x) - pullback.evaluate(&x)).amax();
            assert!(d < 1e-10, "{kp:?} {x:?}: {d}");
        }
    }
    assert!(matches!(
        metric_ambient_pullback(KappaPair::new(0.0, 1.0), 3),
        Err(Error::FlatCase)
    ));
}

#[test]
fn contraction_limit_is_continuous_in_kappa1() {
    let mut rng = rng(5);
    for k2 in [1.0, -1.0, 0.0] {
        let flat = metric_polar(KappaPair::new(0.0, k2), 3).unwrap();
        for k1 in [1e-8, -1e-8] {
            let curved = metric_polar(KappaPair::new(k1, k2), 3).unwrap();
            for _ in 0..50 {
                let x = chart_coords(&mut rng, KappaPair::new(0.0, k2), 3).to_vec();
                let d = (curved.evaluate(&x) - flat.evaluate(&x)).amax();
                assert!(d <= 500.0 * k1.abs(), "κ1={k1} κ2={k2} {x:?}: {d}");
            }
        }
    }
}

#[test]
fn constant_curvature_of_every_nondegenerate_space() {
    let mut rng = rng(6);
    let pairs = all_pairs()
        .into_iter()
        .filter(|kp| kp.kappa2 != 0.0)
        .chain([KappaPair::new(0.5, 2.0)]);
    for kp in pairs {
        let metric = metric_polar(kp, 3).unwrap();
        for _ in 0..50 {
            let x = chart_coords(&mut rng, kp, 3).to_vec();
            let report = curvature(&metric, &x).unwrap();
            for s in &report.sectional {
                assert!(
                    (s.value.unwrap() - kp.kappa1).abs() < 1e-6,
                    "{kp:?} {x:?} {s:?}"
                );
            }
            assert!(
                (report.scalar - 6.0 * kp.kappa1).abs() < 1e-6,
                "{kp:?} {x:?}"
            );
        }
    }
}

#[test]
fn ambient_rotation_is_an_isometry() {
    let kp = KappaPair::new(1.0, 1.0);
    let sig = kp.signature(3).unwrap();
    let form = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 1.0, 1.0]));
    let mut rng = rng(7);
    for _ in 0..100 {
        let t = uniform(&mut rng, -3.0, 3.0);
        let rotation = one_parameter_subgroup(&sig, GeneratorIndex { a: 0, b: 1 }, t).unwrap();
        let x = DVector::from_vec(embed(&chart_coords(&mut rng, kp, 3), kp).unwrap().x);
        let moved = AmbientPoint {
            x: (&rotation * &x).iter().copied().collect(),
        };
        assert!(moved.constraint_residual(kp).abs() < 1e-12);
        let v = DVector::from_fn(4, |_, _| uniform(&mut rng, -1.0, 1.0));
        let w = &rotation * &v;
        assert!(((w.transpose() * &form * &w)[0] - (v.transpose() * &form * &v)[0]).abs() < 1e-12);
    }
}

#[test]
fn space_names() {
    assert_eq!(classify_space(KappaPair::new(1.0, 1.0)), CkSpace::Spherical);
    assert_eq!(
        classify_space(KappaPair::new(-1.0, 0.0)),
        CkSpace::ExpandingNH
    );
    assert_eq!(
        classify_space(KappaPair::new(0.0, -1.0)),
        CkSpace::Minkowskian
    );
    assert_eq!(
        classify_space(KappaPair::new(-0.3, -4.0)),
        CkSpace::DeSitter
    );
}

#[test]
fn catalog_json_rows() {
    let json = serde_json::to_value(catalog(3)).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let sphere = rows.iter().find(|r| r["name"] == "spherical").unwrap();
    assert_eq!(
        sphere["metric_diagonal_symbolic"],
        serde_json::json!(["1", "sin^2 r", "sin^2 r sin^2 theta"])
    );
    assert_eq!(
        (sphere["K_sectional"].as_f64(), sphere["K_scalar"].as_f64()),
        (Some(1.0), Some(6.0))
    );
    let minkowski = rows.iter().find(|r| r["name"] == "minkowskian").unwrap();
    assert_eq!(
        minkowski["metric_diagonal_symbolic"],
        serde_json::json!(["1", "-r^2", "-r^2 sinh^2 theta"])
    );
    let nh = rows.iter().find(|r| r["name"] == "expanding-NH").unwrap();
    assert_eq!(
        (nh["K_sectional"].as_f64(), nh["K_scalar"].as_f64()),
        (Some(-1.0), Some(-6.0))
    );
}
