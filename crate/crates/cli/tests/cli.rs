use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-qre"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn estimate_fh_qubitization() {
    let (code, out, _) = run(&["estimate", "--model", "fh", "--method", "qubitization", "--L", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &rows[0];
    assert_eq!(row["qubits"], 160);
    let tof = row["toffoli"].as_f64().unwrap();
    assert!((tof / 1.36e6 - 1.0).abs() < 0.02, "{tof}");
}

#[test]
fn csv_header_is_fixed() {
    let (code, out, _) = run(&["sweep", "--model", "fh", "--L-range", "4:8", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "model,method,strategy,L,W,r,x,y,z,tau,toffoli,qubits,ref_toffoli,ref_qubits,rel_dev"
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn reproduce_table_four_catalyzed() {
    let (code, out, err) = run(&["reproduce", "supp-table-4", "--strategy", "catalyzed", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 16);
    assert!(err.contains("max relative Toffoli deviation"));
}

#[test]
fn reproduce_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, _) = run(&["reproduce", "supp-table-6", "--seed", "7", "--format", "csv", "--output", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn config_file_sits_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "model = fh\nL = 4\nu = 4\n").unwrap();
    let (code, out, _) = run(&["estimate", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let lam4: serde_json::Value = serde_json::from_str(&out).unwrap();
    let (_, out, _) = run(&["estimate", "--config", cfg.to_str().unwrap(), "--u", "8", "--format", "json"]);
    let lam8: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(lam4[0]["L"], 4);
    assert!(lam4[0]["ref_toffoli"].is_null());
    assert!(lam8[0]["ref_toffoli"].is_number());
    assert!(lam4[0]["toffoli"].as_f64() < lam8[0]["toffoli"].as_f64());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["estimate", "--model", "graphene", "--L", "4"]).0, 2);
    assert_eq!(run(&["estimate", "--model", "cuprate", "--method", "trotter", "--L", "6"]).0, 2);
    assert_eq!(run(&["estimate", "--model", "fh", "--L", "5"]).0, 2);
    assert_eq!(run(&["reproduce", "supp-table-9"]).0, 2);
    assert_eq!(run(&["sweep", "--model", "fh", "--L-range", "8:4"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn missing_norms_is_infeasible_or_usage() {
    let (code, _, err) = run(&["estimate", "--model", "fh", "--method", "trotter", "--L", "34"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn verify_exits_zero_with_json_report() {
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, 0);
    let checks: serde_json::Value = serde_json::from_str(&out).unwrap();
    let arr = checks.as_array().unwrap();
    assert!(!arr.is_empty());
    for c in arr {
        assert!(c["check"].is_string() && c["max_deviation"].is_number());
        assert_eq!(c["pass"], true);
    }
}
