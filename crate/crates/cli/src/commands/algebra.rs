use ckgeo::algebra::{
    build_structure_constants, cartan_decompose, classify_algebra, jacobi_residual, space_report,
    sweep_signs, vector_representation,
};
use serde_json::{json, Map};

use super::{signature, AlgebraArgs};
use crate::error::{CliError, CliResult};
use crate::output::{cell, num, Report, Table};
use crate::Globals;

/// Residuals of integer-κ algebras are exactly zero; real κ may round.
pub const DEFAULT_TOL: f64 = 1e-12;

pub fn run(args: &AlgebraArgs, g: &Globals) -> CliResult<Report> {
    if args.sweep_signs {
        if args.kappa.is_some() {
            return Err(CliError::Usage(
                "--sweep-signs enumerates κ; drop --kappa".into(),
            ));
        }
        return sweep(args.n, g);
    }
    let sig = signature(args.n, args.kappa.as_deref())?;
    let sc = build_structure_constants(&sig);
    let rep = vector_representation(&sig);
    let (jacobi, rep_defect, form_defect) = (
        jacobi_residual(&sc),
        rep.bracket_defect(&sc),
        rep.form_defect(),
    );
    let passed = jacobi.max(rep_defect).max(form_defect) <= g.tol;

    let mut table = Table::new([
        "m",
        "dimension",
        "rank",
        "curvature",
        "isotropy",
        "p_generators",
    ]);
    let mut spaces = Vec::new();
    for m in 1..=sig.n() {
        let report = space_report(&sig, m)?;
        let split = cartan_decompose(&sig, m)?;
        let p: Vec<String> = split.p_generators.iter().map(ToString::to_string).collect();
        table.push(vec![
            m.to_string(),
            report.dimension.to_string(),
            report.rank.to_string(),
            num(report.curvature_coefficient),
            report.isotropy.clone(),
            p.join(" "),
        ]);
        spaces.push(json!({ "report": report, "decomposition": split }));
    }
    let name = classify_algebra(&sig);
    let mut body = Map::new();
    body.insert("name".into(), name.clone().into());
    body.insert("kappa".into(), json!(sig.kappa()));
    body.insert("jacobi".into(), jacobi.into());
    body.insert("representation_defect".into(), rep_defect.into());
    body.insert("form_defect".into(), form_defect.into());
    body.insert("spaces".into(), spaces.into());
    body.insert("structure_constants".into(), sc.to_json());
    Ok(Report {
        passed,
        body,
        table,
        summary: json!({ "name": name, "jacobi": jacobi, "representation_defect": rep_defect, "form_defect": form_defect }),
    })
}

fn sweep(n: usize, g: &Globals) -> CliResult<Report> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let rows = sweep_signs(n, g.exec);
    let failing = rows.iter().filter(|r| !r.passes()).count();
    let mut table = Table::new([
        "kappa",
        "name",
        "jacobi",
        "representation_defect",
        "form_defect",
        "contraction_defect",
    ]);
    for r in &rows {
        table.push(vec![
            cell(&r.kappa),
            r.name.clone(),
            num(r.jacobi),
            num(r.representation_defect),
            num(r.form_defect),
            num(r.contraction_defect),
        ]);
    }
    let summary = json!({ "rows": rows.len(), "failing": failing });
    let mut body = Map::new();
    body.insert("rows".into(), json!(rows));
    body.insert("failing".into(), failing.into());
    Ok(Report {
        passed: failing == 0,
        body,
        table,
        summary,
    })
}
