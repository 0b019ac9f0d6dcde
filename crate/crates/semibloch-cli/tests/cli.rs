//! End-to-end tests of the command-line surface: document parsing, report
//! shapes, CSV emission, exit codes, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semibloch"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_doc(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("semibloch-test-{name}-{}.json", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

const COS_DOC: &str = r#"{
    "id": "cosine",
    "kind": "trig",
    "domain": "R",
    "symbols": {"one": "1"},
    "terms": [
        {"re": 0.5, "im": 0, "num": 1, "den": 1, "symbol": "one"},
        {"re": 0.5, "im": 0, "num": -1, "den": 1, "symbol": "one"}
    ],
    "kernel": {"kind": "exponential", "omega": 1.0, "qPrime": "inf"}
}"#;

#[test]
fn classify_json_report_from_document() {
    let doc = write_doc("cos", COS_DOC);
    let out = run(&[
        "classify",
        "--input",
        doc.to_str().unwrap(),
        "--epsilon",
        "1e-3",
        "--window",
        "500",
        "--k",
        "1/2",
        "--report",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["signal_id"], "cosine");
    assert_eq!(report["classes"]["semiPeriodic"]["verdict"], "yes");
    assert_eq!(report["classes"]["semiAnti"]["verdict"], "yes");
    assert_eq!(report["classes"]["semiBloch(k = 1/2)"]["verdict"], "yes");
    assert_eq!(report["classes"]["anpMember"]["verdict"], "yes");
    let p = report["classes"]["semiBloch(k = 1/2)"]["witness"]["p"].as_f64().unwrap();
    assert!((p - 4.0 * std::f64::consts::PI).abs() < 1e-9);
    std::fs::remove_file(doc).ok();
}

#[test]
fn classify_reports_are_deterministic() {
    let doc = write_doc("det", COS_DOC);
    let args = [
        "classify",
        "--input",
        doc.to_str().unwrap(),
        "--window",
        "300",
        "--report",
        "json",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b, "identical inputs must produce byte-identical reports");
    let report: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
    std::fs::remove_file(doc).ok();
}

#[test]
fn malformed_document_exits_one() {
    let doc = write_doc("bad", "{\"kind\": \"trig\", \"domain\": \"R\"");
    let out = run(&["classify", "--input", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    std::fs::remove_file(doc).ok();
}

#[test]
fn invariant_violation_exits_one_and_names_the_field() {
    let doc = write_doc(
        "dup",
        r#"{"kind": "piecewise", "breakpoints": [0, 2, 1], "values": [1, -1]}"#,
    );
    let out = run(&["classify", "--input", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("breakpoints"));
    std::fs::remove_file(doc).ok();
}

#[test]
fn emit_produces_the_expected_row_count() {
    let out = run(&[
        "emit",
        "--catalog",
        "kosinus",
        "--range",
        "0:6.28",
        "--step",
        "0.01",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(rows[0], "x,re,im");
    assert_eq!(rows.len(), 630);
}

#[test]
fn periods_csv_has_antiperiod_hits_near_pi() {
    let out = run(&[
        "periods",
        "--catalog",
        "kosinus",
        "--kind",
        "antiperiod",
        "--epsilon",
        "0.1",
        "--window",
        "50",
        "--step",
        "0.001",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "tau,certifiedBound");
    let taus: Vec<f64> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(!taus.is_empty());
    // hits at level eps = 0.1 live within 2 asin(0.05) ~ 0.1 of pi + 2 pi n
    let radius = 2.0 * (0.05f64).asin();
    for tau in taus {
        let n = ((tau - std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).round();
        let nearest = std::f64::consts::PI + 2.0 * std::f64::consts::PI * n;
        assert!(
            (tau - nearest).abs() <= radius + 1e-9,
            "tau {tau} far from an antiperiod"
        );
    }
}

#[test]
fn bohr_command_prints_estimate_and_bound() {
    let out = run(&["bohr", "--catalog", "kosinus", "--r", "1.0", "--t", "200"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P_r estimate"), "{text}");
    assert!(text.contains("error bound"), "{text}");
}

#[test]
fn convolve_single_value_matches_closed_form() {
    let doc = write_doc("conv", COS_DOC);
    let out = run(&[
        "convolve",
        "--input",
        doc.to_str().unwrap(),
        "--mode",
        "infinite",
        "--t",
        "0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // G(0) for cos under e^{-s} is exactly 1/2
    let value: f64 = text
        .split(':')
        .nth(1)
        .and_then(|s| s.trim().split_whitespace().next())
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| panic!("unparseable output: {text}"));
    assert!((value - 0.5).abs() < 1e-9, "{text}");
    std::fs::remove_file(doc).ok();
}

#[test]
fn heat_mode_scales_coefficients() {
    let doc = write_doc("heat", COS_DOC);
    let out = run(&[
        "convolve",
        "--input",
        doc.to_str().unwrap(),
        "--mode",
        "heat",
        "--t",
        "1",
    ]);
    assert!(out.status.success());
    let evolved: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let re = evolved["terms"][0]["re"].as_f64().unwrap();
    assert!((re - 0.5 * (-1.0f64).exp()).abs() < 1e-12, "re = {re}");
    std::fs::remove_file(doc).ok();
}

#[test]
fn catalog_lists_all_entries() {
    let out = run(&["catalog"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "demos",
        "kosinus",
        "strina",
        "strina1",
        "olomuc",
        "gaston",
        "pepa-stepa",
        "pepa-stepa-levitan",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn catalog_show_round_trips_through_classify() {
    let out = run(&["catalog", "olomuc"]);
    assert!(out.status.success());
    let doc = write_doc("olomuc", &stdout(&out));
    let classified = run(&[
        "classify",
        "--input",
        doc.to_str().unwrap(),
        "--window",
        "500",
        "--report",
        "json",
    ]);
    assert!(classified.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&classified)).unwrap();
    assert_eq!(report["classes"]["semiAnti"]["verdict"], "yes");
    std::fs::remove_file(doc).ok();
}
