use std::path::PathBuf;
use std::process::{Command, Output};

use cubicwa_cli::suites::known_section;
use cubicwa_core::form::fermat_cubic;
use cubicwa_core::interchange::{to_json, FormDoc, JDataDoc, ModelDoc};
use cubicwa_core::wa::diagonal_model;
use cubicwa_core::*;

fn cubicwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicwa")).args(args).output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    std::fs::create_dir_all(scratch_path("")).unwrap();
    let path = scratch_path(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn reports_are_independent_of_worker_count() {
    let args = ["conjline", "--q", "7", "--samples", "3", "--exhaustive", "--seed", "5", "--format", "rows"];
    let one = cubicwa(&[&args[..], &["--workers", "1"]].concat());
    let three = cubicwa(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    // Timings never reach the report.
    assert!(String::from_utf8_lossy(&one.stderr).contains("conjline:"));
    assert!(!stdout(&one).contains("ms"));
}

#[test]
fn census_below_threshold_never_fails() {
    let out = cubicwa(&["plane-cubic-census", "--q", "3", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["census_only"], true);
    assert_eq!(doc["tallies"]["forms"], "29524");
    // Some integral cubics over GF(3) have no inert line.
    assert_eq!(doc["pass"], false);
}

#[test]
fn plane_cubic_samples_at_threshold() {
    let out = cubicwa(&["plane-cubic-census", "--q", "13", "--samples", "40", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["census_only"], false);
    assert_eq!(doc["records"].as_array().unwrap().len(), 40);
    assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn field_flags() {
    assert_eq!(cubicwa(&["conjline", "--q", "6"]).status.code(), Some(2));
    assert_eq!(cubicwa(&["conjline", "--q", "9", "--p", "3", "--m", "3"]).status.code(), Some(2));
    let out = cubicwa(&["conjline", "--p", "5", "--m", "1", "--surface", "fermat"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["config"]["q"], "5");
    assert_eq!(cubicwa(&["conjline", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_with_three() {
    let out = cubicwa(&["dp4-census", "--q", "5", "--samples", "1", "--budget", "50"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds budget"));
}

#[test]
fn malformed_input_reports_its_location() {
    let path = scratch("bad.json", "{\n  \"field\": {\"p\": 11, \"m\": 1},\n  \"vars\": 4,\n  \"degree\": 3,\n  \"monomials\": [oops]\n}\n");
    let out = cubicwa(&["connect", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn connect_with_an_input_form() {
    let k = make_field(11, 1).unwrap();
    let path = scratch("fermat5.json", &to_json(&FormDoc::of(&fermat_cubic(&k, 5))));
    let report = scratch_path("connect.json");
    let out = cubicwa(&["connect", "--input", path.to_str().unwrap(), "--samples", "4", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&report).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(doc["tallies"]["connected"], "4");
}

fn scratch_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cubicwa-tests-{}", std::process::id())).join(name)
}

#[test]
fn search_from_documents_and_stage_tagged_not_found() {
    let k = make_field(11, 1).unwrap();
    let limits = Limits::default();
    let m = diagonal_model(&k, 4, 1, &limits).unwrap();
    let jd = JData::from_section(&m, &known_section(&k), 1, vec![Place::linear(&k, k.from_i64(2))], &limits).unwrap();
    let model = scratch("model.json", &to_json(&ModelDoc::of(&m)));
    let jdata = scratch("jdata.json", &to_json(&JDataDoc::of(&jd)));
    let (mp, jp) = (model.to_str().unwrap(), jdata.to_str().unwrap());
    let found = cubicwa(&["wa-search", "--model", mp, "--jdata", jp, "--dmax", "3", "--format", "rows"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("tally,found,[t+8 : t+3 : 4t : 1]"));
    let missing = cubicwa(&["wa-search", "--model", mp, "--jdata", jp, "--dmax", "0", "--format", "rows"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stdout(&missing).contains("verdict,search,fail,not found (stage: search)"));
    let piped = cubicwa(&["wa-pipeline", "--model", mp, "--jdata", jp, "--dmax", "0"]);
    assert_eq!(piped.status.code(), Some(1));
    let doc = json(&piped);
    assert!(doc["verdicts"][0]["detail"].as_str().unwrap().contains("not found"));
}

#[test]
fn default_weak_approximation_commands() {
    for cmd in ["wa-descend", "wa-pipeline"] {
        let out = cubicwa(&[cmd]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert_eq!(json(&out)["tallies"].get("section").is_some(), cmd == "wa-pipeline");
    }
}

#[test]
fn split_surface_planes_over_a_small_field() {
    let out = cubicwa(&["dp4-plane", "--q", "7"]);
    let doc = json(&out);
    assert_eq!(doc["tallies"]["lines_scan"], "16");
    assert_eq!(out.status.code(), Some(if doc["pass"] == true { 0 } else { 1 }));
}
