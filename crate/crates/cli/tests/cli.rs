use std::process::{Command, Output};

use serde_json::Value;

fn kdeck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdeck")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kdeck(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn deck_of_a_small_set() {
    let v = json(&["deck", "--n", "6", "--set", "0,1,3", "--k", "2"]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["k"], 2);
    // autocorrelation of {0,1,3} in Z_6; entries sum to 3^2
    assert_eq!(ints(&v["values"]), vec![3, 1, 1, 2, 1, 1]);
    let by_mask = json(&["deck", "--n", "6", "--mask", "0xb", "--k", "2"]);
    assert_eq!(by_mask, v);
}

#[test]
fn digest_matches_between_colliding_sets() {
    let digest = |set: &str| {
        let out = kdeck(&["deck", "--n", "12", "--set", set, "--digest"]);
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap().trim().to_string()
    };
    let e = digest("0,3,4,5,7,8");
    assert_eq!(e.len(), 64);
    assert_eq!(e, digest("0,1,3,4,5,8"));
    assert_ne!(e, digest("0,1,2,3,4,5"));
}

#[test]
fn large_decks_need_force() {
    let out = kdeck(&["deck", "--n", "200", "--set", "0,1", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    let out = kdeck(&["deck", "--n", "200", "--set", "0,1", "--k", "4", "--digest"]);
    assert!(out.status.success());
}

#[test]
fn spectrum_of_half_interval() {
    let v = json(&["spectrum", "--n", "12", "--set", "1,2,3,4,5,6"]);
    assert_eq!(ints(&v["support"]), vec![0, 1, 3, 5, 7, 9, 11]);
    assert_eq!(ints(&v["zero_frequencies"]), vec![2, 4, 6, 8, 10]);
    assert_eq!(ints(&v["support_divisors"]), vec![1, 3, 12]);
}

#[test]
fn extendable_verdicts() {
    let v = json(&["extendable", "--n", "12", "--set", "1,2,3,4,5,6", "--from-set"]);
    assert_eq!(v["extendable"], false);
    assert_eq!(ints(&v["support"]), vec![0, 1, 3, 5, 7, 9, 11]);
    assert!(v["witness"]["denominator"].as_i64().unwrap() > 1);
    assert!(v.get("slope").is_none());

    let v = json(&["extendable", "--n", "15", "--set", "0,3,6,9,12"]);
    assert_eq!(v["extendable"], true);
    assert!(v.get("witness").is_none());
    assert!(v["slope"].as_array().is_some());

    let out = kdeck(&["extendable", "--n", "5", "--set", ""]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificates() {
    assert_eq!(json(&["certify", "--n", "13", "--set", "0,1,5"])["certificate"], "NONVANISHING");
    assert_eq!(json(&["certify", "--n", "12", "--set", "0,3,4,5,7,8"])["certificate"], "UNKNOWN");
}

#[test]
fn constructions() {
    let v = json(&["construct", "even", "--k", "6"]);
    assert_eq!(v["n"], 12);
    assert_eq!(v["kind"], "even-2k");
    assert_eq!(ints(&v["E"]), vec![0, 3, 4, 5, 7, 8]);
    assert_eq!(ints(&v["F"]), vec![0, 1, 3, 4, 5, 8]);
    assert_eq!(v["verified"]["decks_equal_at_3"], true);
    assert_eq!(v["verified"]["translates"], false);

    let v = json(&["construct", "pqrd", "--p", "3", "--q", "5", "--r", "2", "--d", "2"]);
    assert_eq!(v["n"], 60);
    assert_eq!(v["holds"], true);

    let v = json(&["construct", "twodeck", "--n", "101", "--a", "0,10,20,30", "--b", "0,1,3"]);
    assert_eq!(v["kind"], "two-deck");
    assert_eq!(v["verified"]["decks_equal_at_2"], true);
    assert_eq!(v["verified"]["decks_equal_at_3"], false);
    assert_eq!(v["holds"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["construct", "even", "--k", "5"][..],
        &["construct", "pqrd", "--p", "4", "--q", "5", "--r", "2", "--d", "2"],
        &["classify", "--n", "19"],
        &["deck", "--n", "5"],
        &["deck", "--n", "5", "--set", "1", "--mask", "0x1"],
        &["sweep", "--from", "5", "--to", "3"],
        &["mc", "--n", "5", "--samples", "0"],
        &["spectrum", "--n", "0", "--set", "0"],
        &["bogus"],
    ] {
        let out = kdeck(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn symmetric_two_deck_input_is_rejected() {
    let out = kdeck(&["construct", "twodeck", "--n", "12", "--a", "0,1", "--b", "0,6"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn classify_formats() {
    let v = json(&["classify", "--n", "12", "--json"]);
    assert_eq!(v["num_translation_classes"], 352);
    assert_eq!(v["num_deck_classes"], 351);
    assert_eq!(v["determined"], false);
    assert_eq!(v["predicate"], false);
    assert_eq!(v["exception_pair_count"], 1);
    assert_eq!(v["exception_subset_count"], 24);
    assert_eq!(v["exception_fraction"], "3/512");
    assert_eq!(v["exceptions"].as_array().unwrap().len(), 1);

    let out = kdeck(&["classify", "--n", "16", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..6], ["16", "false", "false", "4116", "4112", "128"]);

    let v = json(&["classify", "--n", "16", "--json", "--max-exceptions", "2"]);
    assert_eq!(v["exceptions"].as_array().unwrap().len(), 2);
    assert_eq!(v["exception_pair_count"], 4);
}

#[test]
fn sweep_agrees_with_closed_form() {
    let out = kdeck(&["sweep", "--from", "1", "--to", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<String>> =
        text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 16);
    for row in rows {
        assert_eq!(row[1], row[2], "{row:?}");
    }
}

#[test]
fn mc_is_byte_identical_for_a_seed() {
    let args = ["mc", "--n", "12", "--samples", "20000", "--seed", "99"];
    let a = kdeck(&args);
    let b = kdeck(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_kdeck")).args(args).env("KDECK_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 99);
    assert_eq!(v["generator"], "ChaCha20");
    assert_eq!(v["exact_half_probability"], "231/1024");
    assert_eq!(v["zero_counts"].as_array().unwrap().len(), 12);

    let odd = json(&["mc", "--n", "13", "--samples", "5000", "--seed", "1"]);
    assert!(odd["exact_half_probability"].is_null());
    assert_eq!(odd["nontrivial_any_zero_count"], 0);
}
