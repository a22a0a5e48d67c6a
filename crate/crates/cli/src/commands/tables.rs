use std::f64::consts::PI;

use ckgeo::deform::{
    classify_deformed, conformal_factor, deformed_metric_polar, deformed_space_name,
    polar_curvature_closed_form,
};
use ckgeo::riemann::{curvature, CurvatureReport};
use ckgeo::space::{catalog, metric_diagonal_symbolic, metric_polar, KappaPair};
use rand::Rng;
use serde_json::{json, Map, Value};

use super::{deformation, rng, Table2Args, Table3Args};
use crate::error::CliResult;
use crate::output::{num, Report, Table};
use crate::Globals;

/// Finite-difference curvature agrees with closed forms to about 1e-7.
pub const DEFAULT_TOL: f64 = 1e-5;

const PLANES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn sectional(report: &CurvatureReport) -> [f64; 3] {
    PLANES.map(|(i, j)| report.sectional(i, j).unwrap_or(f64::NAN))
}

/// Largest deviation of a report from `(K_ij, K)`.
fn deviation(report: &CurvatureReport, expected: [f64; 3], scalar: f64) -> f64 {
    sectional(report)
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold((report.scalar - scalar).abs(), f64::max)
}

pub fn table2(args: &Table2Args, g: &Globals) -> CliResult<Report> {
    let mut rng = rng(g.seed);
    let mut table = Table::new([
        "name",
        "kappa1",
        "kappa2",
        "g_rr",
        "g_thth",
        "g_phph",
        "K12",
        "K13",
        "K23",
        "K",
        "method",
        "points",
        "max_error",
        "status",
    ]);
    let mut rows = Vec::new();
    let mut passed = true;
    for entry in catalog(3) {
        let kp = KappaPair::new(entry.kappa1, entry.kappa2);
        let expected = [entry.k_sectional; 3];
        let (method, points, worst) = if kp.kappa2 == 0.0 {
            ("closed-form", 0, 0.0)
        } else {
            let metric = metric_polar(kp, 3)?;
            let mut worst: f64 = 0.0;
            for _ in 0..args.samples {
                let theta = if kp.kappa2 > 0.0 {
                    rng.random_range(0.3..PI - 0.3)
                } else {
                    rng.random_range(0.3..2.0)
                };
                let x = [
                    rng.random_range(0.3..2.0),
                    theta,
                    rng.random_range(0.0..2.0 * PI),
                ];
                worst = worst.max(deviation(
                    &curvature(&metric, &x)?,
                    expected,
                    entry.k_scalar,
                ));
            }
            ("finite-difference", args.samples, worst)
        };
        let ok = worst <= g.tol;
        passed &= ok;
        let status = if ok { "ok" } else { "MISMATCH" };
        let mut row = vec![entry.name.to_string(), num(kp.kappa1), num(kp.kappa2)];
        row.extend(entry.metric_diagonal_symbolic.iter().cloned());
        row.extend(expected.iter().map(|&k| num(k)));
        row.extend([
            num(entry.k_scalar),
            method.into(),
            points.to_string(),
            num(worst),
            status.into(),
        ]);
        table.push(row);
        rows.push(json!({
            "entry": entry,
            "method": method,
            "points": points,
            "max_error": worst,
            "status": status,
        }));
    }
    Ok(finish(passed, rows, table))
}

pub fn table3(args: &Table3Args, g: &Globals) -> CliResult<Report> {
    let point = [args.r, args.theta, args.phi];
    let mut table = Table::new([
        "label",
        "name",
        "z",
        "lambda2_sq",
        "base_metric",
        "conformal_factor",
        "K12",
        "K13",
        "K23",
        "K",
        "method",
        "max_error",
        "status",
    ]);
    let mut rows = Vec::new();
    let mut passed = true;
    let z = args.z.abs();
    for z in [z, 0.0, -z] {
        for l2 in [1.0, 0.0, -1.0] {
            let params = deformation(z, l2, &args.profile)?;
            let label = classify_deformed(&params);
            let base = metric_diagonal_symbolic(KappaPair::new(z, l2), 3).join(", ");
            let mut row = vec![
                label.to_string(),
                deformed_space_name(label).to_string(),
                num(z),
                num(l2),
                base.clone(),
            ];
            if z == 0.0 {
                row.extend(
                    ["1".to_string()]
                        .into_iter()
                        .chain(std::iter::repeat_n(String::new(), 5)),
                );
                row.extend([String::new(), "flat/non-deformed, see table2".into()]);
                table.push(row);
                rows.push(json!({
                    "label": label, "name": deformed_space_name(label), "z": z, "lambda2_sq": l2,
                    "base_metric": base, "status": "flat/non-deformed, see table2",
                }));
                continue;
            }
            let factor = conformal_factor(&params, args.r)?;
            let closed = polar_curvature_closed_form(&params, &point);
            let numeric = if l2 == 0.0 {
                None
            } else {
                Some(curvature(&deformed_metric_polar(&params)?, &point)?)
            };
            let (shown, method, error) = match (&closed, &numeric) {
                (Some(c), Some(n)) => (
                    c,
                    "closed-form+finite-difference",
                    deviation(n, sectional(c), c.scalar),
                ),
                (Some(c), None) => (c, "closed-form", 0.0),
                (None, Some(n)) => (n, "finite-difference", 0.0),
                (None, None) => {
                    row.extend(std::iter::repeat_n(String::new(), 6));
                    row.extend([
                        String::new(),
                        "unavailable: degenerate metric without closed form".into(),
                    ]);
                    table.push(row);
                    rows.push(json!({ "label": label, "z": z, "lambda2_sq": l2, "status": "unavailable" }));
                    continue;
                }
            };
            let ok = error <= g.tol;
            passed &= ok;
            let status = if ok { "ok" } else { "MISMATCH" };
            row.push(num(factor));
            row.extend(sectional(shown).iter().map(|&k| num(k)));
            row.extend([num(shown.scalar), method.into(), num(error), status.into()]);
            table.push(row);
            rows.push(json!({
                "label": label, "name": deformed_space_name(label), "z": z, "lambda2_sq": l2,
                "base_metric": base, "conformal_factor": factor, "curvature": shown,
                "method": method, "max_error": error, "status": status,
            }));
        }
    }
    Ok(finish(passed, rows, table))
}

fn finish(passed: bool, rows: Vec<Value>, table: Table) -> Report {
    let mismatches = rows.iter().filter(|r| r["status"] == "MISMATCH").count();
    let mut body = Map::new();
    body.insert("rows".into(), rows.into());
    Report {
        passed,
        body,
        table,
        summary: json!({ "mismatches": mismatches }),
    }
}
