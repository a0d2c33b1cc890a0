use std::process::Command;

use serde_json::Value;

fn cws(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cws")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, report)
}

#[test]
fn construct_writes_a_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    let (code, r) = cws(&["construct", "--cr", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["parameters"], "[15, 9, 3]");
    assert_eq!(r["results"]["patterns"]["clean"], true);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["n"], 15);
    // the written file is accepted back as a code argument
    let (code, r) = cws(&[
        "verify",
        "--graph",
        "lattice:15",
        "--code",
        path.to_str().unwrap(),
        "-m",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["k"], 9);
}

#[test]
fn construct_two_dimensional() {
    let (code, r) = cws(&["construct", "--cu", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["parameters"], "[225, 186, 6]");
    assert_eq!(r["results"]["distance"]["method"], "low_weight_search");
    let witness = r["results"]["distance"]["witness"].as_str().unwrap();
    assert_eq!(witness.matches('1').count(), 6);
}

#[test]
fn construct_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, r#"{"construction": "repetition", "n": 5}"#).unwrap();
    let (code, r) = cws(&["construct", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["parameters"], "[5, 1, 5]");
    assert_eq!(r["inputs"]["spec"]["construction"], "repetition");
}

#[test]
fn bad_alpha_is_an_input_error() {
    // g^3 has order 5 in GF(16), so it is not primitive
    let (code, r) = cws(&["construct", "--cr", "2", "--alpha-exponent", "3"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
}

#[test]
fn verify_exit_codes_and_witness() {
    let (code, r) = cws(&["verify", "--graph", "c5", "--code", "rows:11000", "-m", "2"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["certificate"]["verdict"], "violation");
    assert!(r["results"]["certificate"]["witness"].is_object());
    let (code, r) = cws(&["verify", "--graph", "lattice:15", "--code", "cr:2", "-m", "3"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["uniformity"]["uniformity"]["value"], 2);
    let (code, _) = cws(&["verify", "--graph", "lattice:15x15", "--code", "cu:1", "-m", "4"]);
    assert_eq!(code, 3, "needs --heavy for the default budget");
    let (code, _) = cws(&["verify", "--graph", "nonexistent.json", "--code", "rep5", "-m", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn graph_files_and_thread_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cws"))
        .args(["verify", "--graph", path.to_str().unwrap(), "--code", "rep5", "-m", "2"])
        .env("CWS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn simulate_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("amps.csv");
    let report = dir.path().join("report.json");
    let args = [
        "simulate",
        "roundtrip",
        "--graph",
        "c5",
        "--code",
        "rep5",
        "--trials",
        "100",
        "--seed",
        "3",
    ];
    let (code, a) = cws(&args);
    let (_, mut b) = cws(&args);
    assert_eq!(code, 0);
    assert!(a["results"]["min_fidelity"]["recovered"].as_f64().unwrap() >= 1.0 - 1e-9);
    let mut a = a;
    a["timings"] = Value::Null;
    b["timings"] = Value::Null;
    assert_eq!(a, b);
    let (code, _) = cws(&[
        "simulate",
        "encode",
        "--graph",
        "c5",
        "--code",
        "rep5",
        "--amplitudes",
        csv.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 33);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved["command"], "simulate");
}

#[test]
fn simulate_protocols() {
    let (code, r) = cws(&[
        "simulate",
        "encode",
        "--graph",
        "c5",
        "--code",
        "rep5",
        "--forced-outcomes",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["transcripts"][0]["outcomes"], serde_json::json!([1]));
    assert_eq!(
        r["results"]["transcripts"][0]["corrections"].as_array().unwrap().len(),
        1
    );
    let two = ["--graph", "path:4", "--code", "rows:1100,0111", "--trials", "10"];
    for protocol in ["partial", "sequential"] {
        let (code, r) = cws(&[&["simulate", protocol], &two[..]].concat());
        assert_eq!(code, 0, "{protocol}: {r}");
    }
    let (code, r) = cws(&[
        "simulate",
        "controlled-u",
        "--graph",
        "c5",
        "--code",
        "rep5",
        "--trials",
        "10",
    ]);
    assert_eq!(code, 0, "{r}");
    let (code, _) = cws(&[
        "simulate",
        "controlled-u",
        "--graph",
        "c5",
        "--code",
        "rep5",
        "--u",
        "XZIIZ",
    ]);
    assert_eq!(code, 2);
    let (code, _) = cws(&["simulate", "encode", "--graph", "cycle:21", "--code", "repetition:21"]);
    assert_eq!(code, 2);
}

#[test]
fn report_calculators() {
    let (code, r) = cws(&["report", "--gv", "2", "8", "--hamming", "15", "9", "3", "--mod3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["gv"]["feasible"], false);
    assert_eq!(r["results"]["hamming"]["q"], "23/32");
    assert_ne!(r["results"]["mod3"]["log_one_plus_mod3"], 2);
    let (code, r) = cws(&["report", "--code", "cr:2", "--graph", "lattice:15"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["graph"]["uniformity"]["uniformity"]["value"], 2);
    // d = 3 is not above m(m+1) = 6 for the degree-2 cycle
    assert_eq!(r["results"]["cws"]["sufficient"]["holds"], false);
}

#[test]
fn usage_errors() {
    let (code, _) = cws(&["verify", "--graph", "c5"]);
    assert_eq!(code, 2);
    let (code, _) = cws(&["--help"]);
    assert_eq!(code, 0);
}
