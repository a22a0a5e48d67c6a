use std::process::{Command, Output};

use serde_json::Value;

fn ckgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = ckgeo(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: {e}\nstderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (doc, out.status.code().unwrap())
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn compact_algebra_is_so4() {
    let (doc, code) = json(&["algebra", "--n", "3", "--kappa", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "ckgeo/1");
    assert_eq!(doc["name"], "so(4)");
    assert_eq!(doc["jacobi"], 0.0);
    assert_eq!(doc["spaces"].as_array().unwrap().len(), 3);
    assert_eq!(doc["spaces"][1]["report"]["dimension"], 4);
    assert_eq!(doc["structure_constants"]["n"], 3);
}

#[test]
fn poincare_algebra_is_recognized() {
    let (doc, code) = json(&["algebra", "--n", "3", "--kappa", "0,-1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["name"], "iso(2,1)");
}

#[test]
fn sign_sweep_has_81_exact_rows() {
    let (doc, code) = json(&["algebra", "--n", "4", "--sweep-signs"]);
    assert_eq!(code, 0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 81);
    assert!(rows
        .iter()
        .all(|r| r["jacobi"] == 0.0 && r["contraction_defect"] == 0.0));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["algebra", "--n", "3", "--kappa", "1,1"][..],
        &["algebra", "--bogus"],
        &["table2", "--output", "xml"],
        &["contract", "--m", "5"],
        &[
            "curvature",
            "--kind",
            "deformed-polar",
            "--profile",
            "cubic",
        ],
        &["geodesic", "--y", "0.5,1.0"],
        &["table2", "--tol", "-1"],
    ] {
        let out = ckgeo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = ckgeo(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for cmd in [
        "algebra",
        "table2",
        "table3",
        "curvature",
        "geodesic",
        "contract",
    ] {
        assert!(text.contains(cmd), "{cmd}");
    }
}

#[test]
fn table2_sphere_row() {
    let (doc, code) = json(&["table2"]);
    assert_eq!(code, 0);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let sphere = &rows[0];
    assert_eq!(sphere["entry"]["name"], "spherical");
    assert_eq!(sphere["entry"]["K_sectional"], 1.0);
    assert_eq!(sphere["entry"]["K_scalar"], 6.0);
    assert!(sphere["max_error"].as_f64().unwrap() < 1e-5);
    assert_eq!(rows[3]["method"], "closed-form");
}

#[test]
fn table3_anti_de_sitter_row_and_flat_rows() {
    let (doc, code) = json(&["table3"]);
    assert_eq!(code, 0);
    let rows = doc["rows"].as_array().unwrap();
    let ads = rows.iter().find(|r| r["label"] == "AdS_z").unwrap();
    let expected = -2.5 * 0.7f64.sin().powi(2) / 0.7f64.cos();
    assert!((ads["curvature"]["scalar"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!(ads["max_error"].as_f64().unwrap() < 1e-5);
    let flat: Vec<_> = rows.iter().filter(|r| r["z"] == 0.0).collect();
    assert_eq!(flat.len(), 3);
    assert!(flat
        .iter()
        .all(|r| r["status"] == "flat/non-deformed, see table2"));
}

#[test]
fn curvature_reference_point() {
    let (doc, code) = json(&[
        "curvature",
        "--kind",
        "deformed-cartesian",
        "--z",
        "0.1",
        "--point",
        "0.3,0.4,0.5",
    ]);
    assert_eq!(code, 0);
    let k = doc["points"][0]["report"]["scalar"].as_f64().unwrap();
    assert!((k + 0.0250104).abs() < 1e-5, "{k}");
}

#[test]
fn curvature_of_a_degenerate_space_is_refused() {
    let out = ckgeo(&["curvature", "--kappa1", "1", "--kappa2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degenerate metric"));
}

#[test]
fn deformed_sphere_geodesic_conserves_invariants() {
    let out = ckgeo(&["geodesic", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,q1,q2,q3,p1,p2,p3,H,C2,C3,p_phi,C2_left"
    );
    assert_eq!(lines.count(), 10_001);
    let meta: Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    let drift = meta["summary"]["max_drift"].as_object().unwrap();
    assert_eq!(drift.len(), 5);
    assert!(
        drift.values().all(|d| d.as_f64().unwrap() < 1e-7),
        "{drift:?}"
    );
}

#[test]
fn flat_geodesic_drifts_at_round_off() {
    let (doc, code) = json(&["geodesic", "--z", "0", "--every", "1000"]);
    assert_eq!(code, 0);
    let drift = doc["summary"]["max_drift"].as_object().unwrap();
    assert!(
        drift.values().all(|d| d.as_f64().unwrap() < 1e-9),
        "{drift:?}"
    );
}

#[test]
fn newtonian_geodesic_is_refused() {
    let out = ckgeo(&["geodesic", "--lambda2-sq", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degenerate"));
}

#[test]
fn verification_failures_exit_with_one() {
    let out = ckgeo(&["table2", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], false);
    assert_eq!(
        ckgeo(&["geodesic", "--tol", "1e-20", "--every", "5000"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn contraction_distance_scales_quadratically() {
    let (doc, code) = json(&["contract", "--n", "3", "--kappa", "1,1,1", "--m", "1"]);
    assert_eq!(code, 0);
    let series = doc["series"].as_array().unwrap();
    assert_eq!(series.len(), 13);
    assert_eq!(series[0]["eps"], 1.0);
    assert_eq!(series[0]["distance"], doc["summary"]["gap"]);
    for s in series {
        let (e, d) = (s["eps"].as_f64().unwrap(), s["distance"].as_f64().unwrap());
        assert!((d / (e * e) - 1.0).abs() < 1e-9);
    }
    assert_eq!(doc["summary"]["target"], "iso(3)");
}

#[test]
fn sequential_contractions_reach_the_flag_algebra() {
    let (doc, code) = json(&["contract", "--n", "4", "--kappa", "-1,1,-1,1", "--m", "3"]);
    assert_eq!(code, 0);
    let chain = doc["flag_chain"].as_array().unwrap();
    assert_eq!(chain.last().unwrap()["name"], "flag");
    assert_eq!(doc["summary"]["flag_distance"], 0.0);
}

#[test]
fn output_is_byte_identical_across_runs_and_execution_modes() {
    for args in [
        &[
            "curvature",
            "--kappa1",
            "-1",
            "--samples",
            "8",
            "--seed",
            "7",
        ][..],
        &["algebra", "--n", "4", "--sweep-signs"],
    ] {
        let a = ckgeo(&[args, &["--output", "csv"]].concat());
        let b = ckgeo(&[args, &["--output", "csv"]].concat());
        let c = ckgeo(&[args, &["--output", "csv", "--sequential"]].concat());
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
        assert_eq!(a.stdout, c.stdout);
    }
    let (x, y) = (
        json(&[
            "geodesic",
            "--random-start",
            "--seed",
            "3",
            "--every",
            "500",
        ]),
        json(&[
            "geodesic",
            "--random-start",
            "--seed",
            "3",
            "--every",
            "500",
        ]),
    );
    assert_eq!(x, y);
}

#[test]
fn seed_changes_sampled_points() {
    let a = ckgeo(&[
        "curvature",
        "--samples",
        "2",
        "--seed",
        "1",
        "--output",
        "csv",
    ]);
    let b = ckgeo(&[
        "curvature",
        "--samples",
        "2",
        "--seed",
        "2",
        "--output",
        "csv",
    ]);
    assert_ne!(a.stdout, b.stdout);
    let meta: Value = serde_json::from_slice(&a.stderr).unwrap();
    assert_eq!(meta["config"]["prng"], "ChaCha8");
    assert_eq!(meta["config"]["seed"], 1);
}
