use std::process::{Command, Output};

use serde_json::Value;

fn ascat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ascat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = ascat(&all);
    let value = serde_json::from_slice(&out.stdout).expect("valid json");
    (value, out.status.code().unwrap())
}

#[test]
fn enumerates_five_avoiders_of_length_three() {
    let (v, code) = json(&["enumerate", "--n", "3", "--avoid", "0011,0021"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 5);
    let seqs: Vec<&str> = v["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["sequence"].as_str().unwrap())
        .collect();
    assert_eq!(seqs, ["000", "001", "010", "011", "012"]);
}

#[test]
fn bijection_on_001() {
    let (v, code) = json(&["bijection", "--seq", "001"]);
    assert_eq!(code, 0);
    assert_eq!(v["image"], "UDUUDD");
    assert_eq!(v["case_number"], 4);

    let (v, _) = json(&["bijection", "--path", "UDUUDD"]);
    assert_eq!(v["sequence"], "001");
}

#[test]
fn verify_reports_and_exit_codes() {
    let (v, code) = json(&["verify", "theorem1", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"], "theorem1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["params"]["n_max"], 6);
    assert_eq!(v["details"].as_array().unwrap().len(), 8);

    let (v, code) = json(&["verify", "table2", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "conjecture-consistent");
}

#[test]
fn ceiling_is_enforced_unless_overridden() {
    let out = ascat(&["count", "--n", "14", "--avoid", "00,01"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ceiling"));

    let (v, code) = json(&[
        "--override-ceiling",
        "count",
        "--n",
        "14",
        "--avoid",
        "00,01",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 0);
}

#[test]
fn deterministic_output_is_reproducible() {
    let args = [
        "--deterministic",
        "--format",
        "csv",
        "count",
        "--n-max",
        "5",
    ];
    let a = ascat(&args);
    let b = ascat(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with(b"n,m,r,s,count\n"));

    let stamped = ascat(&["--format", "csv", "count", "--n-max", "2"]);
    assert!(stamped.stdout.starts_with(b"# generated"));
}

#[test]
fn bad_input_gives_error_record() {
    let (v, code) = json(&["stats", "--seq", "00110242"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("ascent bound"));

    let out = ascat(&["enumerate", "--n", "3", "--avoid", "0x1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_terms_are_printed_in_order() {
    let out = ascat(&["--deterministic", "series", "h", "--x-cap", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "1 * x\n1 * x^2\n1 * x^2 t\n1 * x^3\n3 * x^3 t\n1 * x^3 t^2\n"
    );
}

#[test]
fn count_by_ascents_matches_narayana() {
    let (v, _) = json(&["count", "--n", "4", "--avoid", "0021,0121"]);
    assert_eq!(v["total"], 14);
    assert_eq!(v["by_ascents"]["1"], 6);
    assert_eq!(v["by_ascents"]["3"], 1);
}
