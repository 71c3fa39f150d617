//! Command-line behavior: exit codes, formats, determinism.

use std::process::{Command, Output};

fn quatflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatflag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dist_prints_pi_over_four() {
    let out = quatflag(&["dist", "0.70710678", "-0.70710678", "0", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0.78539816");
}

#[test]
fn dist_rejects_non_unit_with_exit_2() {
    let out = quatflag(&["dist", "1.0", "1.0", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a unit"));
    let out = quatflag(&["dist", "nan", "0", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_unknown_suite_with_exit_2() {
    let out = quatflag(&["verify", "--suites", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_with_impossible_tolerance_exits_1() {
    let out = quatflag(&["verify", "--suites", "rot", "--tol", "1e-30", "--n", "200"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(report["total_failures"].as_u64().unwrap() > 0);
}

#[test]
fn verify_single_suite_passes() {
    let out = quatflag(&["verify", "--suites", "quat", "--n", "500", "--seed", "7"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["suites"][0]["suite"], "quat");
    assert_eq!(report["total_failures"], 0);
}

#[test]
fn homology_outputs_match_the_interface() {
    let out = quatflag(&["homology", "flag"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["H"][0]["rank"], 1);
    assert_eq!(v["H"][1]["torsion"], serde_json::json!([2, 2]));
    let out = quatflag(&["homology", "quotient"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["H"][1]["torsion"], serde_json::json!([2]));
    let out = quatflag(&["homology", "s3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["H"][1]["torsion"], serde_json::json!([]));
    assert_eq!(v["H"][3]["rank"], 1);
}

#[test]
fn cells_sample_csv_is_deterministic() {
    let args = [
        "cells", "sample", "--cell", "e2_1", "--n", "20", "--seed", "9",
    ];
    let a = quatflag(&args);
    let b = quatflag(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "cell,dim,translate,param_s,param_t,w,x,y,z");
    assert_eq!(lines.len(), 21);
    assert!(lines[1].starts_with("e2_1,2,0,"));
}

#[test]
fn cells_sample_flag_level_and_translate() {
    let out = quatflag(&[
        "cells", "sample", "--cell", "e1_2", "--level", "flag", "--n", "5", "--seed", "3",
        "--translate", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "cell,dim,translate,param_s,param_t,r11,r12,r13,r21,r22,r23,r31,r32,r33"
    );
    assert!(lines[1].starts_with("e1_2,1,4,"));
    let out = quatflag(&[
        "cells", "sample", "--cell", "e1_2", "--level", "flag", "--translate", "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cells_sample_ply_header() {
    let out = quatflag(&[
        "cells", "sample", "--cell", "e3", "--n", "7", "--seed", "1", "--format", "ply",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("ply\nformat ascii 1.0\n"));
    assert!(text.contains("element vertex 7"));
    assert_eq!(text.lines().count(), 9 + 7);
}

#[test]
fn cells_sample_rejects_unknown_cell() {
    let out = quatflag(&["cells", "sample", "--cell", "e9_9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cells_check_small_run_passes() {
    let out = quatflag(&["cells", "check", "--n", "500", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["report"]["coverage_failures"], 0);
    assert_eq!(v["report"]["partition_failures"], 0);
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = quatflag(&[
        "verify",
        "--suites",
        "homology",
        "--n",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["total_failures"], 0);
}
