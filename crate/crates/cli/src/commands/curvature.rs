use std::f64::consts::PI;

use ckgeo::deform::{
    cartesian_curvature_closed_form, deformed_metric_cartesian, deformed_metric_polar,
    polar_curvature_closed_form, scalar_curvature_formula, DeformationParams,
};
use ckgeo::exec::map_slice;
use ckgeo::riemann::{curvature, CurvatureReport};
use ckgeo::space::{metric_polar, KappaPair};
use ckgeo::{MetricField, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map};

use super::{deformation, rng, CurvatureArgs, MetricKind};
use crate::error::{CliError, CliResult};
use crate::output::{cell, num, Report, Table};
use crate::Globals;

/// Reference values: sectional curvatures when known, and the scalar curvature.
struct Expected {
    sectional: Option<[f64; 3]>,
    scalar: f64,
}

enum Target {
    Ck(KappaPair),
    Polar(DeformationParams),
    Cartesian(DeformationParams),
}

impl Target {
    fn metric(&self) -> Result<MetricField> {
        match self {
            Target::Ck(kp) => metric_polar(*kp, 3),
            Target::Polar(p) => deformed_metric_polar(p),
            Target::Cartesian(p) => Ok(deformed_metric_cartesian(p)),
        }
    }

    fn expected(&self, x: &[f64]) -> Option<Expected> {
        let from = |r: CurvatureReport| Expected {
            sectional: Some(
                [(0, 1), (0, 2), (1, 2)].map(|(i, j)| r.sectional(i, j).unwrap_or(f64::NAN)),
            ),
            scalar: r.scalar,
        };
        match self {
            Target::Ck(kp) => Some(Expected {
                sectional: Some([kp.kappa1; 3]),
                scalar: 6.0 * kp.kappa1,
            }),
            Target::Polar(p) => polar_curvature_closed_form(p, x).map(from),
            Target::Cartesian(p) if p.profile.name() == "one" => {
                cartesian_curvature_closed_form(p.z, x).ok().map(from)
            }
            Target::Cartesian(p) => {
                let s = p.z * x.iter().map(|v| v * v).sum::<f64>();
                scalar_curvature_formula(p, s).ok().map(|scalar| Expected {
                    sectional: None,
                    scalar,
                })
            }
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            Target::Ck(kp) => {
                let r_max = if kp.kappa1 > 0.0 {
                    0.9 * PI / kp.kappa1.sqrt()
                } else {
                    2.0
                };
                let theta = if kp.kappa2 > 0.0 {
                    rng.random_range(0.1..PI / kp.kappa2.sqrt() - 0.1)
                } else {
                    rng.random_range(0.1..2.0)
                };
                vec![
                    rng.random_range(0.1..r_max),
                    theta,
                    rng.random_range(0.0..2.0 * PI),
                ]
            }
            Target::Polar(p) => {
                let r_max = if p.z > 0.0 {
                    0.8 * PI / (2.0 * p.z.sqrt())
                } else {
                    1.2
                };
                vec![
                    rng.random_range(0.1..r_max),
                    rng.random_range(0.3..1.5),
                    rng.random_range(0.0..2.0 * PI),
                ]
            }
            Target::Cartesian(_) => (0..3).map(|_| rng.random_range(-0.8..0.8)).collect(),
        }
    }
}

pub fn run(args: &CurvatureArgs, g: &Globals) -> CliResult<Report> {
    let target = match args.kind {
        MetricKind::Ck => Target::Ck(KappaPair::new(args.kappa1, args.kappa2)),
        MetricKind::DeformedPolar => {
            Target::Polar(deformation(args.z, args.lambda2_sq, &args.profile)?)
        }
        MetricKind::DeformedCartesian => {
            Target::Cartesian(deformation(args.z, args.lambda2_sq, &args.profile)?)
        }
    };
    let metric = target.metric()?;
    if metric.is_degenerate() {
        return Err(CliError::Usage(format!(
            "{} is a degenerate metric; its curvatures are listed in closed form by table2",
            metric.label()
        )));
    }
    let points = match &args.point {
        Some(p) if p.len() != 3 => {
            return Err(CliError::Usage(format!(
                "--point needs 3 coordinates, got {}",
                p.len()
            )))
        }
        Some(p) => vec![p.clone()],
        None => {
            let mut rng = rng(g.seed);
            (0..args.samples).map(|_| target.sample(&mut rng)).collect()
        }
    };
    let reports = map_slice(&points, g.exec, |x| curvature(&metric, x));
    if let (Some(_), Some(Err(e))) = (&args.point, reports.first()) {
        return Err(e.clone().into());
    }

    let mut table = Table::new([
        "point",
        "K12",
        "K13",
        "K23",
        "K",
        "K_expected",
        "error",
        "status",
    ]);
    let mut rows = Vec::new();
    let mut passed = true;
    for (x, report) in points.iter().zip(reports) {
        let report = match report {
            Ok(r) => r,
            Err(e) => {
                passed = false;
                table.push(vec![
                    cell(x),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    e.to_string(),
                ]);
                rows.push(json!({ "point": x, "error": e.to_string() }));
                continue;
            }
        };
        let expected = target.expected(x);
        let error = expected.as_ref().map(|e| {
            let k =
                [(0, 1), (0, 2), (1, 2)].map(|(i, j)| report.sectional(i, j).unwrap_or(f64::NAN));
            let sectional = e.sectional.map_or(0.0, |s| {
                k.iter()
                    .zip(s)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            });
            sectional.max((report.scalar - e.scalar).abs())
        });
        let status = match error {
            Some(err) if err > g.tol => "MISMATCH",
            Some(_) => "ok",
            None => "no reference",
        };
        passed &= status != "MISMATCH";
        let k = |i, j| report.sectional(i, j).map_or(String::new(), num);
        table.push(vec![
            cell(x),
            k(0, 1),
            k(0, 2),
            k(1, 2),
            num(report.scalar),
            expected.as_ref().map_or(String::new(), |e| num(e.scalar)),
            error.map_or(String::new(), num),
            status.into(),
        ]);
        rows.push(json!({
            "report": report,
            "expected_scalar": expected.as_ref().map(|e| e.scalar),
            "error": error,
            "status": status,
        }));
    }
    let mismatches = rows
        .iter()
        .filter(|r| r["status"] != "ok" && r["status"] != "no reference")
        .count();
    let mut body = Map::new();
    body.insert("metric".into(), metric.label().into());
    body.insert("points".into(), rows.into());
    Ok(Report {
        passed,
        body,
        table,
        summary: json!({ "metric": metric.label(), "failures": mismatches }),
    })
}
