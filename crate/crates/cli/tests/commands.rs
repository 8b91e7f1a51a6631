use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverstokes")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn mutate_at_the_middle_vertex_gives_a_cycle() {
    let out = run(&["mutate", "A3", "--word", "2"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out), json!({ "n": 3, "arrows": [[0, 0, 1], [1, 0, 0], [0, 1, 0]] }));
}

#[test]
fn mutate_trivial_words() {
    let base = json_of(&run(&["mutate", "A4"]));
    assert_eq!(json_of(&run(&["mutate", "A4", "--word", "2,2"])), base);
    assert_eq!(base["arrows"][0], json!([0, 1, 0, 0]));
}

#[test]
fn mutate_reads_files() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", &json!({ "n": 2, "arrows": [[0, 2], [0, 0]] }));
    let out = json_of(&run(&["mutate", &q, "--word", "1"]));
    assert_eq!(out["arrows"], json!([[0, 0], [2, 0]]));
}

#[test]
fn goodness_cases() {
    let good = run(&["goodness", "tau3", "A3"]);
    assert!(good.status.success());
    assert_eq!(json_of(&good)["quadratic_ok"], json!(true));

    let dir = TempDir::new().unwrap();
    let kronecker = write(&dir, "k.json", &json!({ "n": 2, "arrows": [[0, 3], [0, 0]] }));
    let rank2 = write(&dir, "b2.json", &json!({ "rows": [[1, 2], [0, 1]] }));
    let out = json_of(&run(&["goodness", &rank2, &kronecker]));
    assert_eq!(out["quadratic_ok"], json!(true));

    let bad = write(&dir, "b.json", &json!({ "rows": [[1, 0, 1], [0, 1, 0], [0, 0, 1]] }));
    let out = run(&["goodness", &bad, "A3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["vanishing_ok"], json!(false));
}

#[test]
fn goodness_lists_quivers_without_a_quiver() {
    let out = json_of(&run(&["goodness", "tau3", "--lambda", "1"]));
    assert_eq!(out["count"], json!(6));
}

#[test]
fn stokes_of_a3_at_the_joyce_point_is_the_cartan_style_matrix() {
    let out = run(&["stokes", "A3", "--eval", "sJ"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["unique"], json!(true));
    assert_eq!(v["products"][0]["evaluated"]["entries"], json!([["1", "-1", "0"], ["0", "1", "-1"], ["0", "0", "1"]]));
}

#[test]
fn stokes_of_a_mutated_a5() {
    let dir = TempDir::new().unwrap();
    let q = json_of(&run(&["mutate", "A5", "--word", "3,1,5"]));
    let path = write(&dir, "q.json", &q);
    let v = json_of(&run(&["--format", "json", "stokes", &path]));
    assert_eq!(v["unique"], json!(true));
    let text = String::from_utf8(run(&["--format", "text", "stokes", &path]).stdout).unwrap();
    assert!(text.contains("-s1*s2*s3"), "{text}");
    assert!(text.lines().nth(4).unwrap().trim_end().ends_with("s4 ]"), "{text}");
}

#[test]
fn empty_chamber_gives_the_identity() {
    let dir = TempDir::new().unwrap();
    let ch = write(&dir, "c.json", &json!({ "Z": [["0", "1"], ["-1", "1"], ["1", "1"]], "active": [] }));
    let out = json_of(&run(&["stokes", "A3", "--basis", "tau3", "--chamber", &ch, "--eval", "0"]));
    assert_eq!(out["products"][0]["evaluated"]["entries"], json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));
}

fn matrix_file(dir: &TempDir, name: &str, rows: Value) -> String {
    write(dir, name, &json!({ "entries": rows }))
}

#[test]
fn equiv_relates_a4_to_its_triple_mutation() {
    let dir = TempDir::new().unwrap();
    let a4 = matrix_file(&dir, "a.json", json!([["1", "-s1", "0", "0"], ["0", "1", "-s2", "0"], ["0", "0", "1", "-s3"], ["0", "0", "0", "1"]]));
    let m = matrix_file(
        &dir,
        "m.json",
        json!([["1", "s1", "s1*s2", "-s1*s2*s3"], ["0", "1", "s2", "-s2*s3"], ["0", "0", "1", "-s3"], ["0", "0", "0", "1"]]),
    );
    let out = run(&["equiv", &a4, &m]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["certificate"]["verified"], json!(true));
    assert!(!v["certificate"]["word"].as_array().unwrap().is_empty());
}

#[test]
fn equiv_trivial_and_exhausted() {
    let dir = TempDir::new().unwrap();
    let a = matrix_file(&dir, "a.json", json!([[1, -1, 0], [0, 1, -1], [0, 0, 1]]));
    let b = matrix_file(&dir, "b.json", json!([[1, 1, 1], [0, 1, 1], [0, 0, 1]]));
    let same = json_of(&run(&["equiv", &a, &a]));
    assert_eq!(same["certificate"]["word"], json!([]));
    let out = run(&["equiv", &a, &b, "--depth", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["outcome"], json!("inconclusive"));
}

#[test]
fn verify_paper_small_scope_passes_and_is_deterministic() {
    let first = run(&["verify-paper", "braid_relations"]);
    assert!(first.status.success());
    let second = run(&["verify-paper", "braid_relations"]);
    assert_eq!(first.stdout, second.stdout);
    let v = json_of(&first);
    assert_eq!(v["pass"], json!(true));
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l["anchor"].is_string()));
}

#[test]
fn verify_paper_exit_code_follows_the_report() {
    let out = run(&["verify-paper", "all"]);
    let v = json_of(&out);
    let pass = v["pass"].as_bool().unwrap();
    assert_eq!(out.status.success(), pass);
    let an = run(&["--format", "text", "verify-paper", "an_jets"]);
    assert!(an.status.success());
    assert!(String::from_utf8(an.stdout).unwrap().contains("PASS [an-stokes] A2 "));
}

#[test]
fn errors_exit_with_two() {
    let out = run(&["verify-paper", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
