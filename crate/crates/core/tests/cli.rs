use std::process::Command;

use serde_json::Value;

fn rsl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rsl")).args(args).env_remove("RSL_CACHE_DIR").output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = rsl(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn b_value() {
    let v = json(&["b", "--n", "4", "--ranks", "2"]);
    assert_eq!(v["command"], "b");
    assert_eq!(v["results"]["value"], 1);
}

#[test]
fn bprime_value() {
    assert_eq!(json(&["bprime", "--n", "6", "--ranks", "1,2"])["results"]["value"], 1);
}

#[test]
fn construct_renders_descending_run() {
    let v = json(&["construct", "--word", "DDDDDDDA", "--n", "10", "--render"]);
    assert_eq!(v["results"]["facets"][0]["diagram"], "o|8o|1o|7o|2o|6o|3o|5o|4o|9o");
    let (code, out, _) = rsl(&["construct", "--word", "D^7A", "--render", "--csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("o|8o|1o|7o|2o|6o|3o|5o|4o|9o"));
}

#[test]
fn table_schema() {
    let v = json(&["table", "--n", "5"]);
    let r = &v["results"];
    assert_eq!(r["n"], 5);
    assert_eq!(r["lambda"], serde_json::json!([5]));
    let entries = r["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    for e in entries {
        let keys: Vec<&String> = e.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["S", "f", "h"]);
    }
    assert_eq!(entries[0]["S"], serde_json::json!([]));
    assert_eq!(entries[0]["h"], 1);
}

#[test]
fn table_csv_and_dual() {
    let (code, out, _) = rsl(&["table", "--n", "4", "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "S,f,h\n,1,1\n1,1,0\n2,2,1\n1;2,2,0\n");
    let (_, dual, _) = rsl(&["table", "--n", "4", "--csv", "--dual"]);
    assert!(dual.contains("\n1,2,1\n"));
}

#[test]
fn partition_verify_hook() {
    let v = json(&["partition-verify", "--n", "5", "--lambda", "4,1", "--order", "distinguished"]);
    assert_eq!(v["results"]["verified"], true);
    assert_eq!(v["results"]["face_orbits"], 51);
}

#[test]
fn stability_command() {
    assert_eq!(json(&["stability", "--ranks", "2,3", "--n", "7", "--m", "8"])["results"]["equal"], true);
    let (code, _, err) = rsl(&["stability", "--ranks", "3", "--n", "6", "--m", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("\"domain\""));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(rsl(&["b", "--n", "4", "--ranks", "3"]).0, 2);
    assert_eq!(rsl(&["construct", "--word", "DDD"]).0, 2);
    assert_eq!(rsl(&["partition-verify", "--n", "4", "--lambda", "2,2", "--order", "distinguished"]).0, 2);
    assert_eq!(rsl(&["frobnicate"]).0, 2);
    let (_, _, err) = rsl(&["b", "--n", "4", "--ranks", "x"]);
    let e: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(e["error"]["kind"], "parse");
}

#[test]
fn vanish_sweep_flags_inconsistency() {
    let (code, out, _) = rsl(&["vanish", "--n", "4"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = rsl(&["vanish", "--n", "5"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let bad: Vec<&Value> = v["results"]["sets"].as_array().unwrap().iter().filter(|s| s["consistent"] == false).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["S"], serde_json::json!([1, 3]));
}

#[test]
fn verify_all_small_scope() {
    let (code, out, _) = rsl(&["verify-all", "--max-n", "4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let criteria = v["results"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 13);
    assert_eq!(code, if v["results"]["passed"] == true { 0 } else { 1 });
}
