use serde_json::Value;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use tempfile::TempDir;

fn write_ideal(dir: &TempDir, name: &str, n: usize, gens: &[&[i32]]) -> PathBuf {
    let path = dir.path().join(name);
    let body = serde_json::json!({"n": n, "generators": gens});
    fs::write(&path, body.to_string()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzygies")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn ranks(v: &Value) -> Vec<u64> {
    v["ranks"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap()).collect()
}

fn maximal(dir: &TempDir, n: usize) -> PathBuf {
    let rows: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect();
    let refs: Vec<&[i32]> = rows.iter().map(Vec::as_slice).collect();
    write_ideal(dir, &format!("max{n}.json"), n, &refs)
}

#[test]
fn taylor_of_maximal_ideal() {
    let dir = TempDir::new().unwrap();
    let input = maximal(&dir, 3);
    let out = run(&["resolve", "--input", input.to_str().unwrap(), "--box", "2,2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(ranks(&v), [1, 3, 3, 1]);
    assert_eq!(v["exactness"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn minimized_triangle() {
    let dir = TempDir::new().unwrap();
    let input = write_ideal(&dir, "tri.json", 3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    let out = run(&["resolve", "--input", input.to_str().unwrap(), "--minimize"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(ranks(&v), [1, 3, 2]);
    assert_eq!(v["minimal"], Value::Bool(true));
}

#[test]
fn eliahou_kervaire_needs_stable_input() {
    let dir = TempDir::new().unwrap();
    let input = write_ideal(&dir, "tri.json", 3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    let out = run(&["resolve", "--input", input.to_str().unwrap(), "--method", "ek"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stable"));
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let input = maximal(&dir, 2);
    let target = dir.path().join("out.json");
    let out = run(&["resolve", "--input", input.to_str().unwrap(), "--method", "ek", "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(ranks(&v), [1, 2, 1]);
}

#[test]
fn initial_components_both_bases() {
    let dir = TempDir::new().unwrap();
    let input = write_ideal(&dir, "q.json", 2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let path = input.to_str().unwrap();
    let boundary = json(&run(&["initial", "--input", path, "--p", "1", "--oracle"]));
    assert_eq!(boundary["components"], serde_json::json!([[[1, 0]], [[1, 0]], []]));
    assert_eq!(boundary["labels"], serde_json::json!(["e[3]", "e[2]", "e[1]"]));
    assert_eq!(boundary["equal"], Value::Bool(true));
    let lex = json(&run(&["initial", "--input", path, "--p", "1", "--basis", "lex", "--oracle"]));
    assert_eq!(lex["components"], serde_json::json!([[[0, 1]], [[0, 1]], []]));
    assert_eq!(lex["equal"], Value::Bool(true));
    let beyond = json(&run(&["initial", "--input", path, "--p", "5"]));
    assert_eq!(beyond["components"], serde_json::json!([]));
}

#[test]
fn sdepth_exact() {
    let dir = TempDir::new().unwrap();
    let input = maximal(&dir, 4);
    let v = json(&run(&["sdepth", "--input", input.to_str().unwrap()]));
    assert_eq!(v["sdepth"], 2);
    assert_eq!(v["decomposition_verified"], Value::Bool(true));
    let input = write_ideal(&dir, "mixed.json", 4, &[&[1, 0, 0, 0], &[0, 1, 1, 1]]);
    let v = json(&run(&["sdepth", "--input", input.to_str().unwrap()]));
    assert_eq!(v["sdepth"], 3);
    let q = json(&run(&["sdepth", "--input", maximal(&dir, 3).to_str().unwrap(), "--quotient"]));
    assert_eq!(q["sdepth"], 0);
}

#[test]
fn sdepth_over_limit_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = maximal(&dir, 6);
    let out = run(&["sdepth", "--input", input.to_str().unwrap(), "--limit", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sqfree_construction_and_filtration_bound() {
    let dir = TempDir::new().unwrap();
    let input = maximal(&dir, 5);
    let v = json(&run(&["sdepth", "--input", input.to_str().unwrap(), "--mode", "sqfree-construct"]));
    assert_eq!(v["value"], 3);
    assert_eq!(v["bound"], 3);
    let input = maximal(&dir, 3);
    let v = json(&run(&[
        "sdepth", "--input", input.to_str().unwrap(), "--mode", "filtration-bound", "--p", "1", "--method", "koszul",
    ]));
    assert_eq!(v["bound"], 2);
}

#[test]
fn block_structure_and_lift() {
    let v = json(&run(&["partition", "--n", "8", "--a", "1,3,4,7", "--delta", "3/2"]));
    assert_eq!(v["delta"], "3/2");
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    let covered: usize = blocks
        .iter()
        .map(|b| b["B"].as_array().unwrap().len() + b["G"].as_array().unwrap().len())
        .sum();
    assert_eq!(covered, 8);
    let lifted = json(&run(&["partition", "--n", "8", "--a", "1,2", "--lift", "0"]));
    assert_eq!(lifted["lifted"], serde_json::json!([1, 2]));
    assert_eq!(run(&["partition", "--n", "4", "--a", "9"]).status.code(), Some(2));
}

#[test]
fn verify_and_replay() {
    let dir = TempDir::new().unwrap();
    let out = run(&["verify", "--job", "lemma-groebner", "--trials", "3", "--seed", "5", "--n-cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().next().unwrap();
    let report: Value = serde_json::from_str(first).unwrap();
    assert_eq!(report["status"], "PASS");
    let path = dir.path().join("report.json");
    fs::write(&path, first).unwrap();
    let replay = run(&["verify", "--job", "lemma-groebner", "--replay", path.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    let again = String::from_utf8(replay.stdout).unwrap();
    assert!(again.lines().any(|l| l == first));
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"n": 2, "generators": [[1, 0, 0]]}"#).unwrap();
    assert_eq!(run(&["resolve", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--job", "nonsense"]).status.code(), Some(2));
}
