use std::process::Command;

use serde_json::Value;

use sepalg_cli::{run, Outcome, EXIT_COHERENCE, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_OK};

fn sepalg(args: &[&str]) -> Outcome {
    run(std::iter::once("sepalg").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = sepalg(&full);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn maschke_extension_is_separable_with_element() {
    let out = sepalg(&["check-separable", "--extension", "fixtures:Q->QC2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("verdict: yes"));
    let r = json(&["check-separable", "--extension", "fixtures:Q->QC2"]);
    assert_eq!(r["verdict"], "yes");
    // e = 1/2 (1 (x) 1 + g (x) g)
    assert_eq!(
        r["witnesses"]["element"],
        serde_json::json!([[["1", "0"], ["1/2", "0"]], [["0", "1"], ["0", "1/2"]]])
    );
}

#[test]
fn power_extraction_on_column_vectors() {
    let r = json(&["verify", "--thm", "2.8", "--bimodule", "fixtures:M2Q-col", "--n", "2"]);
    assert_eq!(r["verdict"], "pass");
    let alias = json(&[
        "verify",
        "--thm",
        "power-extraction",
        "--bimodule",
        "fixtures:M2Q-col",
        "--n",
        "2",
    ]);
    assert_eq!(alias["witnesses"], r["witnesses"]);
}

#[test]
fn projective_dimension_of_simple_over_a2() {
    let r = json(&["projdim", "--algebra", "fixtures:A2", "--module", "S1"]);
    assert_eq!(r["verdict"], "1");
    assert_eq!(r["witnesses"]["term_dims"], serde_json::json!([2, 1]));
    let inf = json(&["projdim", "--algebra", "fixtures:Qx2", "--module", "S1"]);
    assert_eq!(inf["verdict"], ">16");
    let short = json(&[
        "--cutoff",
        "3",
        "projdim",
        "--algebra",
        "fixtures:Qx2",
        "--module",
        "S1",
    ]);
    assert_eq!(short["verdict"], ">3");
}

#[test]
fn field_is_inferred_from_fixture_names() {
    let r = json(&["check-separable", "--extension", "fixtures:F2->F2C2"]);
    assert_eq!(r["field"], "F2");
    assert_eq!(r["verdict"], "no");
    let q = json(&["check-extension", "--extension", "fixtures:Q->Qx2"]);
    assert_eq!(q["witnesses"]["separable"], "no");
    assert_eq!(q["witnesses"]["split"], "yes");
}

#[test]
fn exit_codes() {
    assert_eq!(
        sepalg(&["check-separable", "--bimodule", "fixtures:missing"]).code,
        EXIT_INVALID
    );
    assert_eq!(sepalg(&["verify", "--thm", "0.0"]).code, EXIT_INVALID);
    assert_eq!(sepalg(&["--field", "11", "fixtures", "list"]).code, EXIT_INVALID);
    assert_eq!(
        sepalg(&["--field", "2", "check-separable", "--extension", "fixtures:Q->QC2"]).code,
        EXIT_INVALID
    );
    assert_eq!(sepalg(&["check-separable"]).code, EXIT_INVALID);
    assert_eq!(sepalg(&["--help"]).code, EXIT_OK);
    // a non-separable verdict is still a computed verdict
    assert_eq!(
        sepalg(&["check-separable", "--bimodule", "fixtures:Qx2_Q"]).code,
        EXIT_OK
    );
    assert_ne!(EXIT_INCONCLUSIVE, EXIT_COHERENCE);
}

#[test]
fn json_errors_carry_the_exit_code() {
    let out = sepalg(&["--json", "projdim", "--algebra", "fixtures:A2", "--module", "S9"]);
    assert_eq!(out.code, EXIT_INVALID);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["exit"], 1);
    assert!(out.stderr.starts_with("error: "));
}

#[test]
fn binary_exit_status_matches() {
    let bin = env!("CARGO_BIN_EXE_sepalg");
    let ok = Command::new(bin)
        .args(["projdim", "--algebra", "fixtures:A2", "--module", "S1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["projdim", "--algebra", "fixtures:nope", "--module", "S1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "verify", "--thm", "2.2"];
    assert_eq!(sepalg(&args).stdout, sepalg(&args).stdout);
    let other_seed = sepalg(&["--json", "--seed", "7", "verify", "--thm", "2.2"]).stdout;
    assert_ne!(sepalg(&args).stdout, other_seed);
}

#[test]
fn saved_witnesses_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["check-separable", "--extension", "fixtures:Q->M2Q"],
        &["check-separable", "--bimodule", "fixtures:M2Q-col"],
        &["sep-element", "--bimodule", "fixtures:QC2-reg", "--power", "2"],
        &["frobenius-check", "--extension", "fixtures:Q->QC2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("r{i}.json"));
        std::fs::write(&path, sepalg(&[&["--json"], *args].concat()).stdout).unwrap();
        let r = json(&["revalidate", path.to_str().unwrap()]);
        assert_eq!(r["verdict"], "pass", "{args:?}");
    }
    // a tampered element is rejected
    let path = dir.path().join("bad.json");
    let mut v = json(&["check-separable", "--bimodule", "fixtures:M2Q-col"]);
    v["witnesses"]["element"]["coords"][0] = Value::from("17");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(sepalg(&["revalidate", path.to_str().unwrap()]).code, EXIT_INVALID);
}

#[test]
fn catalog_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    std::fs::write(&path, sepalg(&["fixtures", "export"]).stdout).unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["check-separable", "--extension", &format!("{p}#Q->QC2")]);
    let from_fixture = json(&["check-separable", "--extension", "fixtures:Q->QC2"]);
    assert_eq!(from_file["witnesses"], from_fixture["witnesses"]);
}

#[test]
fn malformed_files_report_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.json");
    let mut doc: Value = serde_json::from_str(&sepalg(&["fixtures", "export"]).stdout).unwrap();
    doc["algebras"][1]["structure"][0].as_array_mut().unwrap().pop();
    std::fs::write(&path, doc.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let out = sepalg(&["check-separable", "--bimodule", &format!("{p}#QC2-reg")]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("algebras[1].structure[0]"), "{}", out.stderr);
}
