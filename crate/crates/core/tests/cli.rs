use std::process::Command;

use riesz_snp::certify::{read_region_csv, region_scan};
use riesz_snp::cli::{OutputEnvelope, Value};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_riesz-snp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> OutputEnvelope {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    OutputEnvelope::parse(&out).unwrap()
}

#[test]
fn kp_values() {
    let v = ok(&["kp", "--p", "2", "--mu", "0"])
        .get_f64("value")
        .unwrap();
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    let v = ok(&["kp", "--p", "3", "--mu", "0"])
        .get_f64("value")
        .unwrap();
    assert!((v - 1.209_199_576_156_145).abs() < 1e-12);
    let quad = ok(&["kp", "--p", "2.5", "--mu", "0.6"])
        .get_f64("value")
        .unwrap();
    let series = ok(&["kp", "--p", "2.5", "--mu", "0.6", "--method", "series"])
        .get_f64("value")
        .unwrap();
    assert!((quad - series).abs() < 1e-11);
}

#[test]
fn domain_error_exit_code() {
    let (code, out, err) = run(&["kp", "--p", "2", "--mu", "1.5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("domain error"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["kp", "--mu", "0.5"]).0, 1);
    assert_eq!(
        run(&["certify", "--criterion", "bogus", "--mu-const", "0.5"]).0,
        1
    );
    assert_eq!(
        run(&[
            "certify",
            "--criterion",
            "firstcond",
            "--mu-const",
            "0.5",
            "--mu-list",
            "0.1"
        ])
        .0,
        1
    );
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "kp", "snp", "eigen", "tau", "q0", "mu0", "certify", "region", "selftest",
    ] {
        assert!(out.contains(sub), "help lists {sub}");
    }
}

#[test]
fn numerical_failure_exit_code() {
    assert_eq!(
        run(&["kp", "--p", "2", "--mu", "0.99", "--method", "series"]).0,
        3
    );
}

#[test]
fn sharp_constants() {
    let q = ok(&["q0"]).get_f64("q0").unwrap();
    assert!((q - 0.768062).abs() < 1e-4);
    let env = ok(&["mu0"]);
    assert!(env.get_f64("one_minus_mu0").unwrap() < 1e-7);
    assert_eq!(env.get_f64("q0"), Some(q));
}

#[test]
fn certify_p2sharp_example() {
    let env = ok(&["certify", "--criterion", "p2sharp", "--mu-const", "0.9909"]);
    assert_eq!(env.get("verdict"), Some(&Value::Text("PASS".into())));
    assert!(env.get_f64("diag.rho_sum").unwrap() < 1.0);
}

#[test]
fn certify_firstcond_fails_near_one() {
    let env = ok(&[
        "certify",
        "--criterion",
        "firstcond",
        "--p",
        "2",
        "--mu-const",
        "0.9995",
    ]);
    assert_eq!(env.get("verdict"), Some(&Value::Text("FAIL".into())));
}

#[test]
fn certify_invert_grid_carries_caveat() {
    let env = ok(&[
        "certify",
        "--criterion",
        "invert",
        "--p",
        "3",
        "--mu-grid",
        "0.1:0.4:4",
        "--kmax",
        "15",
    ]);
    assert_eq!(env.get("verdict"), Some(&Value::Text("PASS".into())));
    assert_eq!(env.get("truncation_k"), Some(&Value::Integer(15)));
    assert!(env.warnings.iter().any(|w| w.contains("grid")));
}

#[test]
fn snp_and_s() {
    let env = ok(&["snp", "--p", "2", "--mu", "0", "--y", "-0.5"]);
    assert!((env.get_f64("value").unwrap() + 0.5f64.sin()).abs() < 1e-13);
    let s = ok(&["s", "--q", "0.5", "--sign", "+1"])
        .get_f64("s")
        .unwrap();
    assert!((s - 4.0 * std::f64::consts::PI * 0.5f64.sqrt() / 0.5).abs() < 1e-12);
}

#[test]
fn eigen_and_tau_tables() {
    let env = ok(&[
        "eigen",
        "--p",
        "3",
        "--mu",
        "0.6",
        "--n",
        "2",
        "--x-samples",
        "9",
    ]);
    let t = env.table.as_ref().unwrap();
    assert_eq!(t.rows.len(), 9);
    // phi(1/2) = 0 for n = 2
    assert!(t.rows[4][1].as_f64().unwrap().abs() < 1e-10);
    assert!(
        env.get_f64("first_integral_residual").unwrap()
            < env.get_f64("first_integral_tolerance").unwrap()
    );

    let env = ok(&["tau", "--p", "2", "--mu", "0.5", "--kmax", "11"]);
    let t = env.table.unwrap();
    assert_eq!(t.columns, ["k", "tau", "bound"]);
    assert_eq!(t.rows.len(), 11);
    assert!(t.rows[1][1].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn region_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.csv");
    let env = ok(&[
        "region",
        "--pgrid",
        "50",
        "--mugrid",
        "50",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(env.get("rows"), Some(&Value::Integer(2500)));
    assert_eq!(
        env.get("monotone_prefix"),
        Some(&Value::Text("true".into()))
    );

    let bytes = std::fs::read(&path).unwrap();
    assert!(!bytes.contains(&b'\r'));
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert_eq!(text.lines().next(), Some("one_over_p,mu,kp,inside"));
    let rows = read_region_csv(bytes.as_slice()).unwrap();
    assert_eq!(rows, region_scan(50, 50).unwrap());
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &[
            "certify",
            "--criterion",
            "invert",
            "--p",
            "2",
            "--mu-list",
            "0.1,0.2,0.3",
            "--kmax",
            "21",
        ][..],
        &["eigen", "--p", "1.5", "--mu", "0.3", "--n", "3"][..],
        &["q0"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    let env = OutputEnvelope::parse(&out).unwrap();
    assert_eq!(env.get("failures"), Some(&Value::Integer(0)));
}
