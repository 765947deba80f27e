//! End-to-end tests: argv parsing, job execution, exit codes, the JSON
//! round-trip, and the installed binary itself.

use galois_cli::{parse_job, render_table, run_job, Command, Job};
use galois_core::FieldDesc;
use std::io::Write;
use std::process::Command as Process;

fn job(args: &[&str]) -> Job {
    let mut argv = vec!["galois-point"];
    argv.extend_from_slice(args);
    parse_job(argv).expect("argv parses")
}

#[test]
fn parse_job_examples() {
    let j = job(&[
        "check-inner",
        "--field",
        "GF(3)",
        "--poly",
        "X0^3*X2 - X0*X2^3 + X1^4",
    ]);
    assert_eq!(j.command, Command::CheckInner);
    assert_eq!(j.field, FieldDesc::prime_field(3).unwrap());
    assert!(j.point.is_empty()); // defaults to 1,0,...,0

    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "X0^4 + X1^4 + X2^4").unwrap();
    let path = format!("@{}", file.path().display());
    let j = job(&[
        "transfer",
        "--kind",
        "outer",
        "--poly",
        &path,
        "--targets",
        "upto:20",
    ]);
    assert_eq!(j.command, Command::Transfer);
    assert_eq!(j.targets, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    assert_eq!(j.poly_text, "X0^4 + X1^4 + X2^4");

    assert!(parse_job(["galois-point", "check-inner", "--poly", "X0", "--bogus"]).is_err());
}

#[test]
fn dimension_mismatch_is_reported() {
    let j = job(&[
        "check-inner",
        "--poly",
        "X0^3*X2 + X1^4 + X2^4",
        "--point",
        "0,1",
    ]);
    let e = run_job(&j).unwrap_err();
    assert!(e.message.contains("dimension mismatch"), "{e}");
}

#[test]
fn char3_fixture_job() {
    let j = job(&[
        "check-inner",
        "--field",
        "GF(3)",
        "--poly",
        "X0^3*X2 - X0*X2^3 + X1^4",
        "--assume-irreducible",
    ]);
    let report = run_job(&j).unwrap();
    assert_eq!(report.exit_code, 0);
    let v = report.verdict.as_ref().unwrap();
    assert_eq!(v.status, "extendable-galois");
    assert_eq!(v.group.as_deref(), Some("C3"));
    assert_eq!(
        v.witness.as_ref().unwrap().square_root.as_deref(),
        Some("X2")
    );
    assert!(render_table(&report).contains("extendable-galois"));
}

#[test]
fn fermat_outer_job_over_gf5() {
    let j = job(&[
        "check-outer",
        "--field",
        "GF(5)",
        "--poly",
        "X0^4 + X1^4 + X2^4",
    ]);
    let report = run_job(&j).unwrap();
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.verdict.as_ref().unwrap().group.as_deref(), Some("C4"));
}

#[test]
fn extension_required_job_exits_3() {
    let j = job(&[
        "check-outer",
        "--field",
        "GF(2)",
        "--poly",
        "X0^4 + X0*X1^2*X2 + X2^4",
    ]);
    let report = run_job(&j).unwrap();
    assert_eq!(report.exit_code, 3);
    assert_eq!(report.verdict.as_ref().unwrap().status, "extension-required");
}

#[test]
fn nontrivial_point_is_normalized() {
    // same curve with the roles of X0 and X1 swapped; the Galois point is
    // at [0:1:0]
    let j = job(&[
        "check-inner",
        "--field",
        "GF(3)",
        "--poly",
        "X1^3*X2 - X1*X2^3 + X0^4",
        "--point",
        "0,1,0",
    ]);
    let report = run_job(&j).unwrap();
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.verdict.as_ref().unwrap().status, "extendable-galois");
}

#[test]
fn transfer_job_inner_fixture() {
    let j = job(&[
        "transfer",
        "--kind",
        "inner",
        "--poly",
        "X0^3*X2 + X1^4 + X2^4",
        "--targets",
        "2,3,5,7",
        "--assume-irreducible",
    ]);
    let report = run_job(&j).unwrap();
    let t = report.transfer.as_ref().unwrap();
    assert_eq!(t.bound, "864");
    assert_eq!(t.eligibility_modulus, "3");
    assert_eq!(t.source_verdict.status, "extendable-galois");
    let eligible: Vec<&str> = t
        .tested_targets
        .iter()
        .filter(|x| x.predicted_eligible)
        .map(|x| x.q.as_str())
        .collect();
    assert_eq!(eligible, vec!["2", "5", "7"]);
}

#[test]
fn oracle_job_reports_group() {
    let j = job(&[
        "oracle",
        "--field",
        "GF(5)",
        "--poly",
        "X0^4 + X1^4 + X2^4",
        "--ext-degree",
        "1",
        "--kind",
        "outer",
    ]);
    let report = run_job(&j).unwrap();
    let o = report.oracle.as_ref().unwrap();
    assert_eq!(o.order, 4);
    assert_eq!(o.structure, "C4");
    assert_eq!(o.is_galois, Some(true));
}

#[test]
fn resolvent_job_cubics() {
    let j = job(&["resolvent", "--poly", "X0^3 - 3*X0*X1^2 + X1^3"]);
    let report = run_job(&j).unwrap();
    let r = report.resolvent.as_ref().unwrap();
    assert_eq!(r.class.as_deref(), Some("C3"));

    let j = job(&["resolvent", "--poly", "X0^3 - X0*X1^2 - X1^3"]);
    let report = run_job(&j).unwrap();
    assert_eq!(report.resolvent.as_ref().unwrap().class.as_deref(), Some("S3"));
}

#[test]
fn content_job() {
    let j = job(&["content", "--poly", "2*X0^4 + 4*X1^4 + 6*X2^4"]);
    let report = run_job(&j).unwrap();
    let c = report.content.as_ref().unwrap();
    assert_eq!(c.content, "2");
    assert_eq!(c.height, "3");
    assert_eq!(c.part_contents.len(), 5);
}

#[test]
fn json_reports_round_trip() {
    let jobs = [
        job(&[
            "check-inner",
            "--field",
            "GF(3)",
            "--poly",
            "X0^3*X2 - X0*X2^3 + X1^4",
            "--json",
        ]),
        job(&[
            "transfer",
            "--kind",
            "outer",
            "--poly",
            "X0^4 + X1^4 + X2^4",
            "--targets",
            "3,5,7",
            "--json",
        ]),
        job(&[
            "oracle",
            "--field",
            "GF(2)",
            "--poly",
            "X0^4 + X1^3*X2 + X2^4",
            "--ext-degree",
            "2",
            "--json",
        ]),
    ];
    for j in jobs {
        let report = run_job(&j).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let parsed: galois_cli::report::Report = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        let again = serde_json::to_string(&parsed).unwrap();
        assert_eq!(text, again);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema"], 1);
    }
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_galois-point");
    let out = Process::new(bin)
        .args([
            "check-inner",
            "--field",
            "GF(3)",
            "--poly",
            "X0^3*X2 - X0*X2^3 + X1^4",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: galois_cli::report::Report =
        serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.verdict.unwrap().group.as_deref(), Some("C3"));

    // exit code 3 for extension-required
    let out = Process::new(bin)
        .args([
            "check-outer",
            "--field",
            "GF(2)",
            "--poly",
            "X0^4 + X0*X1^2*X2 + X2^4",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // exit code 2 for precondition failures
    let out = Process::new(bin)
        .args(["check-inner", "--poly", "X0^4 + X1^4 + X2^4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // usage errors also exit 2
    let out = Process::new(bin).args(["check-inner"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
