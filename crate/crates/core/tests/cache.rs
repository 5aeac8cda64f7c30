use std::fs;
use std::process::Command;

use serde_json::Value;

use rsl::cache::Cache;
use rsl::enumerate::enumerate_facet_orbits;
use rsl::Shape;

fn table(dir: &std::path::Path, n: &str, lambda: &str) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_rsl"))
        .args(["table", "--n", n, "--lambda", lambda])
        .env("RSL_CACHE_DIR", dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn store_then_load_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let shape = Shape::full(6).unwrap();
    let facets = enumerate_facet_orbits(&shape).unwrap();
    cache.store(&shape, &facets).unwrap();
    assert_eq!(cache.load(&shape).unwrap().unwrap(), facets);
}

#[test]
fn keys_never_collide() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let hook = Shape::new(&[5, 1]).unwrap();
    cache.store(&hook, &enumerate_facet_orbits(&hook).unwrap()).unwrap();
    assert!(cache.load(&Shape::full(6).unwrap()).unwrap().is_none());
}

#[test]
fn cold_and_warm_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cold = table(dir.path(), "7", "7");
    let warm = table(dir.path(), "7", "7");
    assert_eq!(cold["cache"][0]["status"], "miss");
    assert_eq!(warm["cache"][0]["status"], "hit");
    assert_eq!(cold["results"], warm["results"]);

    let other = table(dir.path(), "6", "5,1");
    assert_eq!(other["cache"][0]["status"], "miss");
    let full6 = table(dir.path(), "6", "6");
    assert_eq!(full6["cache"][0]["status"], "miss");
    assert_ne!(other["results"], full6["results"]);
}

#[test]
fn corruption_is_detected_and_repaired() {
    let dir = tempfile::tempdir().unwrap();
    let clean = table(dir.path(), "6", "4,2");
    let path = Cache::new(dir.path()).path_for(&Shape::new(&[4, 2]).unwrap());
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("1@", "2@", 1)).unwrap();
    let repaired = table(dir.path(), "6", "4,2");
    assert_eq!(repaired["cache"][0]["status"], "corrupt");
    assert_eq!(repaired["results"], clean["results"]);
    assert_eq!(table(dir.path(), "6", "4,2")["cache"][0]["status"], "hit");
}
