use ckgeo::algebra::{build_structure_constants, classify_algebra, contract_gamma, CkSignature};
use serde_json::{json, Map};

use super::{signature, ContractArgs};
use crate::error::{CliError, CliResult};
use crate::output::{num, Report, Table};
use crate::Globals;

/// Bound on the relative spread of `distance / ε²` over the series.
pub const DEFAULT_TOL: f64 = 1e-6;

/// `n` values from 1 down to `min`, evenly spaced in `log10`.
fn logspace(min: f64, n: usize) -> Vec<f64> {
    let last = min.log10();
    (0..n)
        .map(|k| 10f64.powf(last * k as f64 / (n - 1) as f64))
        .collect()
}

pub fn run(args: &ContractArgs, g: &Globals) -> CliResult<Report> {
    let sig = signature(args.n, args.kappa.as_deref())?;
    if args.m == 0 || args.m > sig.n() {
        return Err(CliError::Usage(format!("--m must lie in 1..={}", sig.n())));
    }
    if args.points < 2 || !(args.min_eps > 0.0 && args.min_eps < 1.0) {
        return Err(CliError::Usage(
            "need --points >= 2 and 0 < --min-eps < 1".into(),
        ));
    }
    let sc = build_structure_constants(&sig);
    let target = build_structure_constants(&sig.with_kappa_m(args.m, 0.0)?);
    let gap = sc.distance(&target);

    let eps = logspace(args.min_eps, args.points);
    let distances = eps
        .iter()
        .map(|&e| Ok(contract_gamma(&sc, args.m, e)?.distance(&target)))
        .collect::<ckgeo::Result<Vec<f64>>>()?;
    let at_zero = contract_gamma(&sc, args.m, 0.0)?.distance(&target);
    let monotone = distances
        .windows(2)
        .all(|w| w[1] < w[0] || (gap == 0.0 && w[1] == 0.0));
    let ratios: Vec<f64> = eps
        .iter()
        .zip(&distances)
        .map(|(e, d)| d / (e * e))
        .collect();
    let spread = if gap == 0.0 {
        0.0
    } else {
        ratios
            .iter()
            .map(|r| (r / ratios[0] - 1.0).abs())
            .fold(0.0, f64::max)
    };
    let full_gap_ok = (distances[0] - gap).abs() <= g.tol * gap.max(1.0);

    let mut chain = Vec::new();
    let mut current = sc.clone();
    let mut partial: CkSignature = sig.clone();
    for m in 1..=sig.n() {
        current = contract_gamma(&current, m, 0.0)?;
        partial = partial.with_kappa_m(m, 0.0)?;
        chain.push(json!({
            "m": m,
            "name": classify_algebra(current.signature()),
            "distance_to_target": current.distance(&build_structure_constants(&partial)),
        }));
    }
    let flag = build_structure_constants(&CkSignature::new(vec![0.0; sig.n()])?);
    let flag_distance = current.distance(&flag);
    let chain_ok = flag_distance == 0.0 && chain.iter().all(|c| c["distance_to_target"] == 0.0);

    let passed = monotone && spread <= g.tol && full_gap_ok && at_zero == 0.0 && chain_ok;
    let mut table = Table::new(["eps", "distance", "distance_over_eps2"]);
    for ((e, d), r) in eps.iter().zip(&distances).zip(&ratios) {
        table.push(vec![num(*e), num(*d), num(*r)]);
    }
    let summary = json!({
        "algebra": classify_algebra(&sig),
        "target": classify_algebra(target.signature()),
        "gap": gap,
        "monotone": monotone,
        "ratio_spread": spread,
        "distance_at_zero": at_zero,
        "flag_distance": flag_distance,
    });
    let series: Vec<_> = eps
        .iter()
        .zip(&distances)
        .zip(&ratios)
        .map(|((e, d), r)| json!({ "eps": e, "distance": d, "distance_over_eps2": r }))
        .collect();
    let mut body = Map::new();
    body.insert("summary".into(), summary.clone());
    body.insert("series".into(), series.into());
    body.insert("flag_chain".into(), chain.into());
    Ok(Report {
        passed,
        body,
        table,
        summary,
    })
}
