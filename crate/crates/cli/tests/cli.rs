use std::process::{Command, Output};

use serde_json::Value;
use skein_core::{expr, presentations};

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn normalize_swaps_generators() {
    let o = skein(&["normalize", "--algebra", "f11", "x2 x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A^2 x1 x2 - (A^3 - A^-1) x3");
}

#[test]
fn multiply_and_tolinks() {
    let o = skein(&["multiply", "--algebra", "f11", "x1", "x2"]);
    assert_eq!(stdout(&o), "x1 x2");
    let o = skein(&["tolinks", "--algebra", "f11", "x1 x2"]);
    assert_eq!(stdout(&o), "A*(1,1) + A^-1*(1,-1)");
}

#[test]
fn tolinks_grows_its_table() {
    let o = skein(&["tolinks", "--algebra", "f10", "x1^4 x2^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(4,3)"));
}

#[test]
fn commutator_with_unit() {
    let o = skein(&["commutator", "--algebra", "f11", "--u", "A", "x1", "x2"]);
    assert_eq!(stdout(&o), "(A^2 - A^-2) x3");
    let o = skein(&["commutator", "--algebra", "f11", "--u", "A+1", "x1", "x2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn curve_literal() {
    let o = skein(&["curve", "--algebra", "f11", "(1,1)"]);
    assert_eq!(stdout(&o), "x3");
    let o = skein(&["curve", "--algebra", "f11", "(2,1)"]);
    assert_eq!(stdout(&o), "A^-1 x1 x3 - A^-2 x2");
    let o = skein(&["curve", "--algebra", "f04", "(1,1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn specializations() {
    let o = skein(&["normalize", "--algebra", "f11", "--eval-A", "-1", "x2 x1"]);
    assert_eq!(stdout(&o), "x1 x2");
    let o = skein(&[
        "normalize",
        "--algebra",
        "f04",
        "--quotient",
        "A^2+1",
        "x2 x1",
    ]);
    assert_eq!(stdout(&o), "x1 x2");
    let o = skein(&["normalize", "--algebra", "f11", "--eval-A", "2", "x1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let o = skein(&["normalize", "--algebra", "f11", "x1 + (x2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("at 8"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(skein(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        skein(&["normalize", "--algebra", "nope", "x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(skein(&["verify", "nothing"]).status.code(), Some(2));
}

#[test]
fn json_matches_text() {
    let text = stdout(&skein(&["normalize", "--algebra", "f11", "x3 x2 x1"]));
    let json = stdout(&skein(&[
        "normalize",
        "--algebra",
        "f11",
        "--format",
        "json",
        "x3 x2 x1",
    ]));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["algebra"], "f11");
    let p = presentations::f11();
    let from_text = expr::parse_element(&text, p.table()).unwrap();
    let from_json = expr::element_from_json(&v, p.table()).unwrap();
    assert_eq!(from_text, from_json);
    assert_eq!(
        stdout(&skein(&["normalize", "--algebra", "f11", &text])),
        text
    );
}

#[test]
fn verify_suite_exit_codes() {
    let o = skein(&["verify", "maps"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("maps: 4/4 checks passed"));
    let o = skein(&["verify", "maps", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    // the twice-punctured torus system is not confluent at weight 4
    let o = skein(&["verify", "confluence", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn deterministic_for_fixed_seed() {
    let args = [
        "verify", "zerodiv", "--seed", "3", "--trials", "20", "--format", "json",
    ];
    assert_eq!(stdout(&skein(&args)), stdout(&skein(&args)));
}

#[test]
fn info_lists_relations() {
    let o = skein(&["info", "--algebra", "f10"]);
    let t = stdout(&o);
    assert!(t.contains("generators: x1 x2 x3"));
    assert!(t.contains("rewritten monomials: x1 x2 x3"));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("skein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = skein(&[
        "verify",
        "maps",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "maps");
    std::fs::remove_dir_all(dir).unwrap();
}
