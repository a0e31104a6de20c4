//! End-to-end checks of the command-line interface: exact bytes for the
//! documented outputs, determinism across runs, and exit codes.

use std::process::{Command, Output};

fn gvcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = gvcount(args);
    assert!(out.status.success(), "{args:?}: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_csv_small() {
    let s = stdout(&["table", "--type", "Aodd", "--dmax", "1", "--format", "csv"]);
    assert_eq!(s, "d,g,h,n\n0,1,0,-4\n1,2,0,-16\n");
}

#[test]
fn table_skips_inadmissible_degrees() {
    let s = stdout(&["table", "--type", "Aev", "--dmax", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["type"], "Aev");
    assert_eq!(v["skipped_d"], serde_json::json!([1, 2, 3]));
    // the d = 0 cell is the only admissible one in range
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["d"], 0);
    }
}

#[test]
fn table_rejects_unknown_type() {
    let out = gvcount(&["table", "--type", "bogus", "--dmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_unknown_flags() {
    let out = gvcount(&["table", "--type", "Aodd", "--dmax", "1", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kkv_rows() {
    let s = stdout(&["kkv", "--dmax", "0", "--format", "csv"]);
    assert_eq!(s, "d,h,n\n-1,0,-1\n0,0,-24\n0,1,2\n");
}

#[test]
fn kkv_accepts_negative_dmax() {
    let s = stdout(&["kkv", "--dmax", "-1", "--format", "csv"]);
    assert_eq!(s, "d,h,n\n-1,0,-1\n");
    let out = gvcount(&["kkv", "--dmax", "-2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn theta_rows() {
    let s = stdout(&["theta", "--lattice", "Nsh", "--order", "1", "--format", "csv"]);
    assert_eq!(s, "q,w,c\n1,-1,1\n1,0,2\n1,1,1\n");
    let s = stdout(&["theta", "--lattice", "K", "--order", "0", "--format", "csv"]);
    assert_eq!(s, "q,w,c\n0,0,1\n");
}

#[test]
fn theta_rejects_unknown_lattice() {
    let out = gvcount(&["theta", "--lattice", "L8", "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for fmt in ["json", "csv", "md"] {
        let a = stdout(&["table", "--type", "Aodd", "--dmax", "4", "--format", fmt]);
        let b = stdout(&["table", "--type", "Aodd", "--dmax", "4", "--format", fmt]);
        assert_eq!(a, b, "format {fmt}");
    }
}

#[test]
fn json_parses_and_round_trips() {
    let s = stdout(&["table", "--type", "NIodd", "--dmax", "3", "--format", "json"]);
    let rec = gvcount::output::OutputRecord::from_json(&s).unwrap();
    let table = rec.to_table().unwrap();
    let rec2 = gvcount::output::OutputRecord::from_table(&table);
    assert_eq!(rec, rec2);
}

#[test]
fn verify_small_suite_exits_zero() {
    let out = gvcount(&["verify", "--suite", "identities", "--order", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = gvcount(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_gvcount"))
        .env("GV_SERIES_THREADS", "1")
        .args(["theta", "--lattice", "N", "--order", "4", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out_bad = Command::new(env!("CARGO_BIN_EXE_gvcount"))
        .env("GV_SERIES_THREADS", "zero")
        .args(["theta", "--lattice", "N", "--order", "4"])
        .output()
        .unwrap();
    assert_eq!(out_bad.status.code(), Some(2));
}
