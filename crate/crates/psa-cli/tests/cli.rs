use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn psa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psa")).args(args).env_remove("PSA_TRUNC").output().expect("run psa")
}

fn psa_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psa")).args(args).env(key, val).output().expect("run psa")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("psa-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_sl2_exits_zero() {
    let o = psa(&["verify", "--alg", "sl2", "--trunc", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: PASS"));
}

#[test]
fn singular_s_mode_omega2_has_dim_6() {
    let o = psa(&["singular", "--alg", "abelian3", "--mode", "S", "--u", "omega:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim sing = 6"));
    let j = json_of(&psa(&["singular", "--alg", "abelian3", "--mode", "S", "--u", "omega:2", "--json"]));
    assert_eq!(j["dim"], 6);
    assert_eq!(j["sing"]["agree"], true);
}

#[test]
fn classify_w_omega1() {
    let o = psa(&["classify", "--alg", "abelian2", "--u", "omega:1", "--mode", "W"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reducible; unique submodule = image of d"));
}

#[test]
fn classify_w_sym2_is_irreducible() {
    let j = json_of(&psa(&["classify", "--alg", "abelian2", "--u", "sym2", "--json"]));
    assert_eq!(j["classification"]["verdict"], "irreducible_tensor");
    assert_eq!(j["passed"], true);
}

#[test]
fn derham_abelian2_reports_exactness() {
    let j = json_of(&psa(&["derham", "--alg", "abelian2", "--fil", "3", "--json"]));
    assert_eq!(j["passed"], true);
    let entries = j["exactness"]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["passed"] == true));
    let top: Vec<&Value> = entries.iter().filter(|e| e["degree"] == 2 && e["fil"].as_u64().unwrap() >= 1).collect();
    assert!(top.iter().all(|e| e["fil_dim"].as_u64().unwrap() - e["image_dim"].as_u64().unwrap() == 1));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["classify", "--alg", "solv2", "--u", "omega:1", "--json"];
    assert_eq!(psa(&args).stdout, psa(&args).stdout);
    let args = ["singular", "--alg", "heis3", "--mode", "S", "--u", "omega:1", "--json"];
    assert_eq!(psa(&args).stdout, psa(&args).stdout);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(psa(&["verify", "--alg", "nope"]).status.code(), Some(2));
    assert_eq!(psa(&["singular", "--alg", "abelian2", "--mode", "S"]).status.code(), Some(2));
    assert_eq!(psa(&["classify", "--alg", "abelian2", "--u", "omega:7"]).status.code(), Some(2));
    assert_eq!(psa(&["derham", "--alg", "abelian2", "--trunc", "3"]).status.code(), Some(2));
    assert_eq!(psa(&["singular", "--alg", "heis3", "--mode", "S", "--chi", "0,0,1"]).status.code(), Some(2));
}

#[test]
fn truncation_exceeded_exits_3() {
    assert_eq!(psa(&["verify", "--alg", "abelian2", "--trunc", "3"]).status.code(), Some(3));
}

#[test]
fn psa_trunc_overrides_default() {
    let j: Value = serde_json::from_slice(&psa_env(&["verify", "--alg", "abelian1", "--json"], "PSA_TRUNC", "5").stdout).unwrap();
    assert_eq!(j["config"]["trunc"], 5);
    assert_eq!(psa_env(&["verify", "--alg", "abelian1"], "PSA_TRUNC", "x").status.code(), Some(2));
    let j = json_of(&psa(&["verify", "--alg", "abelian1", "--json"]));
    assert_eq!(j["config"]["trunc"], 6);
}

#[test]
fn algebra_file_and_report_merge() {
    let alg = scratch("solv.json");
    std::fs::write(&alg, r#"{"dim": 2, "brackets": [[1, 2, 2, "1/1"]], "chi": "zero", "pi": {"dim": 1, "mats": [[["1/1"]], [["0/1"]]]}}"#).unwrap();
    let a = scratch("a.json");
    let b = scratch("b.json");
    let alg_s = alg.to_str().unwrap();
    let o = psa(&["singular", "--alg", alg_s, "--u", "omega:1", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = psa(&["classify", "--alg", alg_s, "--u", "omega:1", "--out", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m = psa(&["report-merge", a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    assert_eq!(m.status.code(), Some(0));
    let j = json_of(&m);
    assert_eq!(j["passed"], true);
    assert_eq!(j["reports"].as_array().unwrap().len(), 2);
    assert_eq!(j["reports"][0]["config"]["pi"], "file");
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"dim": 2, "brackets": [[2, 1, 2, "1/1"]]}"#).unwrap();
    assert_eq!(psa(&["verify", "--alg", bad.to_str().unwrap()]).status.code(), Some(2));
}
