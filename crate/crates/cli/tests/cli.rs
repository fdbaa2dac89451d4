use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ncym::io::ConnectionJson;
use ncym::{Calculus, GaugeConnection, C64};

fn ncym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn verify_passes_with_at_least_forty_checks() {
    let t = tempfile::tempdir().unwrap();
    let out = ncym(&["--mode", "verify", "--out", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(t.path());
    assert!(r["passed"].as_u64().unwrap() >= 40);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["ledger"], "alt-wedge/dh-minus-f/star-uniform");
}

#[test]
fn strict_verify_fails_on_the_convention_check() {
    let t = tempfile::tempdir().unwrap();
    let out = ncym(&["--mode", "verify", "--strict", "--out", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(t.path());
    assert_eq!(r["failed"], 1);
    assert_eq!(r["warnings"], 0);
}

#[test]
fn solve_pure_ym_seed_42_is_flat() {
    let t = tempfile::tempdir().unwrap();
    let out = ncym(&["--mode", "solve", "--seed", "42", "--out", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(t.path());
    assert!(r["curvature_norm"].as_f64().unwrap() <= 1e-8);
    assert_eq!(r["seed"], 42);
    assert!(r["configuration"]["A"].is_object());
}

#[test]
fn spectrum_grade_zero() {
    let t = tempfile::tempdir().unwrap();
    let out = ncym(&["--mode", "spectrum", "--grade", "0", "--out", t.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(t.path().join("spectrum.csv")).unwrap();
    let vals: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(vals.len(), 4);
    assert!(vals[0].abs() <= 1e-10);
    assert!(vals[1..].iter().all(|v| (v - 2.0).abs() <= 1e-10));
}

#[test]
fn malformed_config_exits_two_with_a_diagnostic() {
    let t = tempfile::tempdir().unwrap();
    let path = t.path().join("cfg.json");
    fs::write(&path, "{\n  \"mode\": \"solve\",\n  \"charge\": \"one\"\n}").unwrap();
    let out = ncym(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("`charge`"), "{err}");

    fs::write(&path, r#"{"solver": {"tolerance": -1}}"#).unwrap();
    let out = ncym(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solver.tolerance"));

    let out = ncym(&["--potential", "1,nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ncym(&["--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_one_and_still_writes() {
    let t = tempfile::tempdir().unwrap();
    let dir = t.path().to_str().unwrap();
    let out = ncym(&["--mode", "solve", "--equations", "ymsm", "--max-iter", "2", "--potential", "0,2", "--out", dir]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(t.path())["status"], "max_iterations");
}

#[test]
fn flags_override_the_file() {
    let t = tempfile::tempdir().unwrap();
    let path = t.path().join("cfg.json");
    let out_dir = t.path().join("o");
    let cfg = serde_json::json!({
        "mode": "solve",
        "charge": 2,
        "solver": {"seed": 1, "mode": "yang_mills"},
        "out": out_dir,
    });
    fs::write(&path, cfg.to_string()).unwrap();
    let out = ncym(&["--config", path.to_str().unwrap(), "--seed", "5", "--charge", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out_dir);
    assert_eq!((r["seed"].as_u64(), r["charge"].as_i64()), (Some(5), Some(-1)));
}

#[test]
fn connection_file_and_charge_tests() {
    let t = tempfile::tempdir().unwrap();
    let calc = Calculus::<C64>::new(2).unwrap();
    let a = ncym::fields::instances::generator_connection(&calc);
    let conn = ConnectionJson::from_connection(&GaugeConnection::new(a.potential().clone()).unwrap(), vec![-2, 1]);
    let path = t.path().join("a.json");
    fs::write(&path, serde_json::to_string(&conn).unwrap()).unwrap();
    let dir = t.path().join("o");
    let out = ncym(&[
        "--mode", "solve", "--connection", path.to_str().unwrap(), "--out", dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&dir);
    let tests = r["charge_tests"].as_array().unwrap();
    assert_eq!(tests.len(), 2);
    for c in tests {
        assert!(c["adjoint_defect"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn identical_runs_give_identical_reports() {
    let strip = |dir: &Path| {
        let mut r = report(dir);
        r["timing"] = serde_json::Value::Null;
        serde_json::to_string(&r).unwrap()
    };
    for mode in ["solve", "verify"] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        for d in [&a, &b] {
            let out = ncym(&["--mode", mode, "--seed", "11", "--out", d.path().to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0));
        }
        assert_eq!(strip(a.path()), strip(b.path()), "{mode}");
    }
}
