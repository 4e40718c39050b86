use std::process::{Command, Output};

use serde_json::Value;

fn quadit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadit")).args(args).output().expect("spawn quadit")
}

fn json(args: &[&str]) -> Value {
    let out = quadit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn mu_values() {
    let v = json(&["mu", "--r", "3"]);
    let mus: Vec<&str> = v.as_array().unwrap().iter().map(|x| x["mu"].as_str().unwrap()).collect();
    assert_eq!(mus[0], "1");
    assert_eq!(mus[3], "39/2^7");
}

#[test]
fn nu_weights_and_coeffs_as_csv() {
    let out = quadit(&["nu-weights", "--r", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("index,value"));
    assert!(text.contains("0,5/2^3"));

    let v = json(&["coeffs", "--r", "1"]);
    let c: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(c, ["1", "-3/2", "1/2"]);
}

#[test]
fn proper_graphs_match_curve_counts() {
    let v = json(&["proper-graphs", "--d", "0", "--k", "3"]);
    assert_eq!(v["count"], "4");
    assert_eq!(v["agree"], true);
    let v = json(&["proper-graphs", "--d", "-1", "--k", "2", "--list"]);
    assert_eq!(v["graphs"].as_array().unwrap().len(), 1);
}

#[test]
fn moments_and_image_sizes() {
    let v = json(&["moments", "--prime", "13", "--r", "1", "--k", "3"]);
    let m: Vec<&str> = v.as_array().unwrap().iter().map(|x| x["moment"].as_str().unwrap()).collect();
    assert_eq!(m, ["13", "13", "25", "49"]);
    let v = json(&["image-size", "--prime", "13", "--r", "2"]);
    let s: Vec<u64> = v.as_array().unwrap().iter().map(|x| x["size"].as_u64().unwrap()).collect();
    assert_eq!(s, [13, 7, 6]);
}

#[test]
fn table1_small_prime() {
    let v = json(&["table1", "--prime", "5"]);
    assert_eq!(v[0]["bins"], serde_json::json!([0, 0, 0, 2, 0, 0, 0, 2, 0, 0]));
}

#[test]
fn exit_codes() {
    // p = 7 is 1 mod 3, so X^3 + c is not a permutation
    assert_eq!(quadit(&["table1", "--prime", "7"]).status.code(), Some(1));
    assert_eq!(quadit(&["mu", "--r", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(quadit(&["orbit", "--prime", "15"]).status.code(), Some(1));
    assert!(quadit(&["identity-check", "--prime", "101", "--samples", "3"]).status.success());
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("quadit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.json");
    let out = quadit(&["pollard", "--n", "15", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["factor"], 3);
    assert_eq!(v["cofactor"], 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
