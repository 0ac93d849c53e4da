use std::process::{Command, Output};

use serde_json::Value;

fn resonance(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resonance"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

const TWO_LINES: &str = r#"{"n": 4, "field": "rational", "K": [
  [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]]}"#;

#[test]
fn solve_two_lines_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k4.json");
    std::fs::write(&input, TWO_LINES).unwrap();
    let out = resonance(&["solve", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["tool"], "resonance");
    assert_eq!(r["seed"], 0);
    assert!(r["elapsed_seconds"].is_f64());
    assert_eq!(r["result"]["section"]["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(r["result"]["section"]["all_transversal"], true);
}

#[test]
fn solve_writes_output_file_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&p1, &p2] {
        let out = resonance(&[
            "solve", "--random", "--n", "5", "--dim-k", "6", "--seed", "7", "--no-timing", "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(a, b);
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["seed"], 7);
    assert!(r["elapsed_seconds"].is_null());
    assert_eq!(r["result"]["section"]["solutions"].as_array().unwrap().len(), 5);
    // rational entries are "p/q" strings, complex ones [re, im]
    assert!(r["result"]["pair"]["K"][0][0].is_string());
    assert!(r["result"]["section"]["solutions"][0]["a"][0].as_array().unwrap().len() == 2);
}

#[test]
fn solve_input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 4,").unwrap();
    assert_eq!(resonance(&["solve", "--input", bad.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(resonance(&["solve", "--input", missing.to_str().unwrap()]).status.code(), Some(1));
    // positive-dimensional section is refused
    assert_eq!(resonance(&["solve", "--random", "--n", "5", "--dim-k", "5"]).status.code(), Some(1));
    assert_eq!(resonance(&["solve"]).status.code(), Some(1));
    assert_eq!(resonance(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn membership_exit_codes() {
    let out = resonance(&["membership", "--raag", "4", "--point", "[1, 0, 1, 1]"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["resonant"], true);
    assert!(r["result"]["witness"].is_array());

    let out = resonance(&["membership", "--raag", "4", "--point", "[1, 1, 1, 1]"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["result"]["resonant"], false);

    assert_eq!(resonance(&["membership", "--raag", "4", "--point", "[0, 0, 0, 0]"]).status.code(), Some(1));
    assert_eq!(resonance(&["membership", "--raag", "4", "--point", "[1, 2]"]).status.code(), Some(1));
}

#[test]
fn membership_with_empty_k() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.json");
    std::fs::write(&input, r#"{"n": 4, "field": "rational", "K": []}"#).unwrap();
    let out = resonance(&["membership", "--input", input.to_str().unwrap(), "--point", "[1, 0, 0, 0]"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn duality_small() {
    let out = resonance(&["duality", "--n", "4", "--dim-k", "4", "--trials", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["agreements"], 3);
    assert_eq!(resonance(&["duality", "--n", "3", "--dim-k", "1"]).status.code(), Some(1));
}

#[test]
fn p1_subcommands() {
    let out = resonance(&["p1", "--a", "2", "--b", "3", "dims", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = report(&out)["result"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["expected"], 6);
    assert_eq!(rows[1]["expected"], 5);

    let out = resonance(&["p1", "--a", "1", "--b", "2", "crosscheck", "--count", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["agreements"], 50);

    let out = resonance(&["p1", "--a", "1", "--b", "2", "strata", "--count", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["result"]["zero_component_convention"].is_string());

    assert_eq!(resonance(&["p1", "--a", "3", "--b", "2", "dims"]).status.code(), Some(1));
}

#[test]
fn raag_report() {
    let out = resonance(&["raag", "--n", "6", "--points", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["hyperplane_coordinates"].as_array().unwrap().len(), 4);
    assert_eq!(resonance(&["raag", "--n", "3"]).status.code(), Some(1));
}
