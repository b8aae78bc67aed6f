//! Behavioral tests of the binary: spot-check each command's output values
//! against the library's documented examples, plus the error paths.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kelley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kelley"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn kelley_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kelley"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("piped stdin")
        .write_all(input.as_bytes())
        .expect("write instance");
    child.wait_with_output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json_of(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn intersection_triangle() {
    let out = kelley(&["intersection", &fixture("triangle.json")]);
    let v = json_of(&out);
    assert_eq!(v["value"], "2/3");
    assert_eq!(v["measure"]["1"], "1/3");
    assert_eq!(v["witness_sequence"]["0"], 1);
    assert_eq!(v["weights"][2], "1/3");
}

#[test]
fn intersection_from_stdin() {
    let out = kelley_stdin(
        &["intersection"],
        r#"{"ground":["x","y"],"sets":[["x"],["y"]]}"#,
    );
    let v = json_of(&out);
    assert_eq!(v["value"], "1/2");
}

#[test]
fn intersection_pi_on_functional_fixture() {
    let out = kelley(&["intersection-pi", &fixture("functional.json")]);
    let v = json_of(&out);
    // Game matrix [[3/2, 0], [0, 1/2]]: mixing columns (1/4, 3/4) gives
    // value 3/8.
    assert_eq!(v["value"], "3/8");
}

#[test]
fn intersection_ideal_and_order_agree() {
    let a = json_of(&kelley(&["intersection-ideal", &fixture("ideal.json")]));
    let b = json_of(&kelley(&["intersection-order", &fixture("ideal.json")]));
    assert_eq!(a["value"], "1/2");
    assert_eq!(b["value"], "1/2");
    assert_eq!(a["measure"]["3"], "0");
}

#[test]
fn game_values() {
    let out = kelley(&["game", &fixture("pair_game.json")]);
    let v = json_of(&out);
    // Rows δa, δb, (δa+δb)/2 against columns {a}, {a,b}: the third row
    // guarantees 1/2 on column {a} and 1 on {a,b}; row 1 gets 1 on both.
    assert_eq!(v["value"], "1");
    assert_eq!(v["row_strategy"][0], "1");
}

#[test]
fn threshold_family_output() {
    let out = kelley(&["threshold", &fixture("threshold.json"), "--epsilon", "1/2"]);
    let v = json_of(&out);
    assert_eq!(v["empty"], false);
    let family = v["family"].as_array().unwrap();
    assert!(family.contains(&serde_json::json!(["a", "b"])));
    // ε at the total: strict inequality empties the family.
    let out = kelley(&["threshold", &fixture("threshold.json"), "--epsilon", "1"]);
    let v = json_of(&out);
    assert_eq!(v["empty"], true);
    // Bad epsilon is an input error.
    let out = kelley(&["threshold", &fixture("threshold.json"), "--epsilon", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kelley(&["threshold", &fixture("threshold.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_verify_and_synthesize() {
    // Every member of family 0 contains `a` and of family 1 contains `b`,
    // so both intersection numbers are 1; the geometric weights 2/3, 1/3
    // then mix the point masses.
    let v = json_of(&kelley(&["decompose-verify", &fixture("decomposition.json")]));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["values"][0], "1");
    assert_eq!(v["values"][1], "1");
    let v = json_of(&kelley(&["synthesize", &fixture("decomposition.json")]));
    assert_eq!(v["measure"]["a"], "2/3");
    assert_eq!(v["measure"]["b"], "1/3");
}

#[test]
fn normalize_breakpoint() {
    let v = json_of(&kelley(&["normalize", &fixture("functional.json")]));
    assert_eq!(v["value_at_one"], "1");
    assert_eq!(v["neg_value_at_minus_one"], "1");
    assert_eq!(v["vertices"][0]["a"], "3/4");
    // Precondition violation exits 2.
    let out = kelley(&["normalize", &fixture("impossible_functional.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn modulus_bounds() {
    let v = json_of(&kelley(&["modulus", &fixture("functional.json")]));
    assert_eq!(v["upper"], "1");
    let out = kelley(&["modulus", &fixture("functional.json"), "--max-len", "2"]);
    let v = json_of(&out);
    assert_eq!(v["search_len"], 2);
}

#[test]
fn ideal_repr_paths() {
    let v = json_of(&kelley(&["ideal-repr", &fixture("explicit_ideal.json")]));
    assert_eq!(v["generator"], serde_json::json!(["1", "2"]));
    assert_eq!(v["measure"]["3"], "1");
    let out = kelley(&["ideal-repr", &fixture("explicit_nonideal.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("union-closed"), "stderr: {err}");
}

#[test]
fn domination_commands() {
    let v = json_of(&kelley(&["dominate", &fixture("pair_game.json")]));
    assert_eq!(v["measure"]["a"], "1/2");
    assert_eq!(v["null_generator"], serde_json::json!(["c"]));
    let v = json_of(&kelley(&["mstar", &fixture("pair_game.json")]));
    assert!(v["vertices"].as_array().unwrap().len() >= 3);
    let v = json_of(&kelley(&["hs-subset", &fixture("pair_game.json")]));
    assert_eq!(v["indices"], serde_json::json!([2]));
}

#[test]
fn norming_command() {
    let v = json_of(&kelley(&["norming", &fixture("ideal.json")]));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["measure_side"], "2");
    assert_eq!(v["ideal_side"], "2");
    // Improper ideal exits 2.
    let out = kelley(&["norming", &fixture("improper_ideal.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ranking_commands() {
    let v = json_of(&kelley(&["ranking-compare", &fixture("order_measure.json")]));
    assert_eq!(v["verdict"], true);
    let v = json_of(&kelley(&["ranking-compare", &fixture("order_ideal.json")]));
    assert_eq!(v["verdict"], true);
    let v = json_of(&kelley(&["ranking-axioms", &fixture("order_measure.json")]));
    for axiom in ["i", "ii", "iii", "iv", "v"] {
        assert_eq!(v["axioms"][axiom]["holds"], true);
    }
    let v = json_of(&kelley(&["ranking-represent", &fixture("ideal.json")]));
    assert_eq!(v["generator"], serde_json::json!(["3"]));
    assert_eq!(v["measure"]["1"], "1/2");
    // Explicit validation flows through the same command.
    let out = kelley(&[
        "ranking-represent",
        &fixture("explicit_nonideal.json"),
        "--explicit",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&kelley(&[
        "ranking-represent",
        &fixture("explicit_ideal.json"),
        "--explicit",
    ]));
    assert_eq!(v["generator"], serde_json::json!(["1", "2"]));
}

#[test]
fn verify_command() {
    let v = json_of(&kelley(&["verify", &fixture("triangle.json"), "--max-len", "6"]));
    assert_eq!(v["verdict"], true);
    assert_eq!(v["value"], "2/3");
    assert_eq!(v["bruteforce_value"], "2/3");
    assert_eq!(v["searched_max_length"], 6);
}

#[test]
fn input_errors_exit_one() {
    for name in [
        "malformed.json",
        "unknown_key.json",
        "unknown_label.json",
        "bad_rational.json",
    ] {
        let out = kelley(&["intersection", &fixture(name)]);
        assert_eq!(out.status.code(), Some(1), "fixture {name}");
        assert!(!out.stderr.is_empty());
    }
    // Missing file.
    let out = kelley(&["intersection", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing required section.
    let out = kelley_stdin(&["intersection"], r#"{"ground":["a"]}"#);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn semantic_errors_exit_two() {
    // Empty family is a semantic rejection, not a schema one.
    let out = kelley_stdin(&["intersection"], r#"{"ground":["a"],"sets":[]}"#);
    assert_eq!(out.status.code(), Some(2));
    // Ideal equal to the powerset cannot back an order.
    let out = kelley(&["intersection-ideal", &fixture("improper_ideal.json")]);
    assert_eq!(out.status.code(), Some(2));
    // A family member that is not a probability.
    let out = kelley_stdin(
        &["dominate"],
        r#"{"ground":["a"],"measures":[{"a":"1/2"}]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
}
