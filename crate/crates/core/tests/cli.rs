use std::process::{Command, Output};

use clap::Parser;
use garside_b3::cli::{run, Cli};
use garside_b3::hurwitz::Factorization;
use garside_b3::lefschetz::{standard_sequence, Sl2Matrix};
use proptest::prelude::*;
use serde_json::Value;

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = garside(&full);
    (serde_json::from_str(&stdout(&o)).unwrap(), o.status.code().unwrap())
}

#[test]
fn normal_form_and_equality() {
    let o = garside(&["nf", "ABA"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "D^-1 :");
    let (v, code) = json(&["nf", "abab"]);
    assert_eq!(code, 0);
    assert_eq!(v["power"], 1);
    assert_eq!(stdout(&garside(&["eq", "aba", "bab"])), "true");
    assert_eq!(stdout(&garside(&["eq", "ab", "ba"])), "false");
}

#[test]
fn duality_commands() {
    let (v, _) = json(&["dual", "ab"]);
    assert_eq!(v["tau"], "a");
    assert_eq!(v["omega"], 1);
    assert_eq!(stdout(&garside(&["dual", "--left", "ab"])), "b");
    assert_eq!(stdout(&garside(&["omega", "aabb"])), "3");
    let o = garside(&["omega", "aba"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn half_twist_command() {
    let (v, code) = json(&["halftwist", "--conjugator", "b", "--axis", "1", "--exponent", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["exponent"], 2);
    assert_eq!(v["omega"], 1);
    assert_eq!(v["normal_form"]["power"], -1);
    assert_eq!(garside(&["halftwist", "--conjugator", "b", "--axis", "3"]).status.code(), Some(2));
}

#[test]
fn hurwitz_commands() {
    assert_eq!(stdout(&garside(&["move", "a|b|a", "--index", "1", "--dir", "left"])), "b|Bab|a");
    assert_eq!(stdout(&garside(&["complexity", "aa|Abba|bb"])), "1 {2:3}");
    let (v, code) = json(&["canonicalize", "b|aa|b|aa"]);
    assert_eq!(code, 0);
    let f: Factorization = serde_json::from_value(v["factorization"].clone()).unwrap();
    assert_eq!(f.to_string(), "aa|b|aa|b");
    assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
    let (v, _) = json(&["orbit", "a|b|a|a|b|a", "--max-complexity", "0"]);
    assert!(v["count"].as_u64().unwrap() >= 1);
}

#[test]
fn enumeration_and_verification() {
    let (v, _) = json(&["enumerate", "--bound", "0", "--count"]);
    let n = v["count"].as_u64().unwrap();
    assert!(n > 0);
    let (v, code) = json(&["verify", "--bound", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances_checked"].as_u64().unwrap(), n);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn lefschetz_command() {
    assert_eq!(stdout(&garside(&["lefschetz", "--project", "a"])), Sl2Matrix::S.to_string());
    let seq = serde_json::to_string(&standard_sequence(12)).unwrap();
    let (v, code) = json(&["lefschetz", &seq]);
    assert_eq!(code, 0);
    assert_eq!(v["sequence"].as_array().unwrap().len(), 12);
    let bad = serde_json::to_string(&standard_sequence(6)).unwrap();
    assert_eq!(garside(&["lefschetz", &bad]).status.code(), Some(1));
}

#[test]
fn errors_have_stable_exit_codes() {
    let o = garside(&["nf", "c"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let (v, code) = json(&["canonicalize", "a|b"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "classify");
    let o = garside(&["move", "a|b", "--index", "1", "--dir", "up"]);
    assert_eq!(o.status.code(), Some(2));
    let (v, code) = json(&["move", "a|b", "--index", "2", "--dir", "right"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "hurwitz");
    assert_eq!(garside(&["bogus"]).status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nf_output_parses_back(w in "[abAB]{0,16}") {
        let cli = Cli::try_parse_from(["garside", "nf", w.as_str()]).unwrap();
        let out = run(&cli).unwrap();
        let reparsed: garside_b3::garside::GarsideForm = out.text.parse().unwrap();
        prop_assert_eq!(reparsed, garside_b3::garside::normal_form(&w.parse().unwrap()));
    }
}
