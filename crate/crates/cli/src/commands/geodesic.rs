use std::f64::consts::PI;

use ckgeo::deform::{geodesic_hamiltonian, state_invariants, GeodesicHamiltonian, Invariants};
use ckgeo::riemann::{flow_until_failure, FlowConfig, FlowState, Hamiltonian};
use rand::Rng;
use serde_json::{json, Map};

use super::{deformation, rng, GeodesicArgs};
use crate::error::{CliError, CliResult};
use crate::output::{num, nums, Report, Table};
use crate::Globals;

/// Relative drift bound met by the default midpoint run on the deformed sphere.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Invariants with `|I(0)|` at or below this are compared absolutely.
const ABSOLUTE_FLOOR: f64 = 1e-12;

fn random_start(h: &GeodesicHamiltonian, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = rng(seed);
    loop {
        let y = vec![
            rng.random_range(0.3..1.2),
            rng.random_range(0.5..1.5),
            rng.random_range(0.0..2.0 * PI),
        ];
        let p: Vec<f64> = (0..3).map(|_| rng.random_range(-0.05..0.05)).collect();
        if h.in_domain(&y) {
            return (y, p);
        }
    }
}

pub fn run(args: &GeodesicArgs, g: &Globals) -> CliResult<Report> {
    if args.y.len() != 3 || args.p.len() != 3 {
        return Err(CliError::Usage("--y and --p need 3 components each".into()));
    }
    if args.every == 0 {
        return Err(CliError::Usage("--every must be at least 1".into()));
    }
    let params = deformation(args.z, args.lambda2_sq, &args.profile)?;
    let h = geodesic_hamiltonian(&params)?;
    let (y, p) = if args.random_start {
        random_start(&h, g.seed)
    } else {
        (args.y.clone(), args.p.clone())
    };
    if !h.in_domain(&y) {
        return Err(CliError::Usage(format!(
            "initial point {y:?} lies outside the chart of the deformed space"
        )));
    }
    let cfg = FlowConfig {
        dt: args.dt,
        steps: args.steps,
        integrator: args.integrator.into(),
        ..FlowConfig::default()
    };
    let outcome = flow_until_failure(&h, FlowState::new(&h, y.clone(), p.clone(), 0.0), &cfg);
    if let (Some(e), true) = (&outcome.stopped, outcome.states.is_empty()) {
        return Err(e.clone().into());
    }
    let invariants: Vec<Invariants> = outcome
        .states
        .iter()
        .map(|s| state_invariants(&h, s))
        .collect::<ckgeo::Result<_>>()?;

    let start = invariants[0].as_array();
    let mut drift = [0.0_f64; 5];
    for inv in &invariants {
        for (k, v) in inv.as_array().iter().enumerate() {
            let scale = if start[k].abs() > ABSOLUTE_FLOOR {
                start[k].abs()
            } else {
                1.0
            };
            drift[k] = drift[k].max((v - start[k]).abs() / scale);
        }
    }
    let max_drift: Map<String, serde_json::Value> = Invariants::NAMES
        .iter()
        .zip(drift)
        .map(|(n, d)| (n.to_string(), d.into()))
        .collect();
    let completed = outcome.stopped.is_none();
    let passed = completed && drift.iter().all(|&d| d < g.tol);

    let kept: Vec<usize> = (0..outcome.states.len()).step_by(args.every).collect();
    let mut table = Table::new([
        "t", "q1", "q2", "q3", "p1", "p2", "p3", "H", "C2", "C3", "p_phi", "C2_left",
    ]);
    for &i in &kept {
        let (s, inv) = (&outcome.states[i], &invariants[i]);
        let mut row = vec![num(s.time)];
        row.extend(nums(&s.coords));
        row.extend(nums(&s.momenta));
        row.extend(nums(&[inv.h, inv.c2, inv.c3, inv.p_phi, inv.c2_left]));
        table.push(row);
    }

    let summary = json!({
        "initial": { "y": y, "p": p },
        "completed_steps": outcome.states.len() - 1,
        "stopped": outcome.stopped.as_ref().map(ToString::to_string),
        "max_drift": max_drift,
        "drift_measure": "max_t |I(t) - I(0)| / |I(0)|, absolute when |I(0)| <= 1e-12",
    });
    let trajectory: Vec<_> = kept
        .iter()
        .map(|&i| {
            let s = &outcome.states[i];
            json!({ "t": s.time, "q": s.coords, "p": s.momenta, "invariants": invariants[i] })
        })
        .collect();
    let mut body = Map::new();
    body.insert("summary".into(), summary.clone());
    body.insert("trajectory".into(), trajectory.into());
    Ok(Report {
        passed,
        body,
        table,
        summary,
    })
}
