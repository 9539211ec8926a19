use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_leibniz-ct");

const EXAMPLE2: &str = r#"{"field":"Q","dim":2,"products":[{"i":0,"j":0,"terms":[{"k":1,"c":"1"}]},{"i":1,"j":0,"terms":[{"k":1,"c":"1"}]}]}"#;
const NILPOTENT_GF3: &str = r#"{"field":{"GF":3},"dim":2,"basis":["a","a2"],"products":[{"i":0,"j":0,"terms":[{"k":1,"c":"1"}]}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leibniz-ct-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_code_triple() {
    let good = scratch("ex2.json", EXAMPLE2);
    let out = run(&["verify", good.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let bad = scratch("nilpotent.json", NILPOTENT_GF3);
    let out = run(&["verify", bad.to_str().unwrap(), "--suite", "lemma1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["ct"]["status"], "not_ct");
    // A failed claim: the jac family is stated to be CT.
    let out = run(&["verify", "--family", "jac", "--p", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["ct"]["witness"]["x"], "x1");

    let malformed = scratch("malformed.json", r#"{"field":"Q","dim":2,"products":[{"i":0}]}"#);
    let out = run(&["analyze", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing field"));
    assert_eq!(run(&["census", "--gf", "4", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "all"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn analyze_example2() {
    let path = scratch("ex2a.json", EXAMPLE2);
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["leibniz"]["ok"], true);
    assert_eq!(r["lie"], false);
    assert_eq!(r["series"]["derived"]["length"], 2);
    assert_eq!(r["nilradical"]["basis"], serde_json::json!(["e2"]));
    assert_eq!(r["ct"]["status"], "unfalsified");
    let text = run(&["analyze", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("nilradical: span{e2}"));

    let broken = scratch("broken.json", r#"{"field":{"GF":3},"dim":1,"products":[{"i":0,"j":0,"terms":[{"k":0,"c":"1"}]}]}"#);
    let out = run(&["analyze", broken.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["leibniz"]["ok"], false);
}

#[test]
fn census_and_family() {
    let out = run(&["census", "--gf", "2", "--dim", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["tables"].as_u64(), r["leibniz_valid"].as_u64(), r["ct"].as_u64()), (Some(2), Some(1), Some(1)));
    let a = run(&["census", "--gf", "2", "--dim", "2", "--jobs", "1", "--json"]);
    let b = run(&["census", "--gf", "2", "--dim", "2", "--jobs", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);

    let out = run(&["family", "cyclic", "--alphas", "2,1", "--gf", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch("cyc.json", &String::from_utf8(out.stdout).unwrap());
    let q = run(&["quotient", path.to_str().unwrap(), "--ideal", "a3, a2"]);
    assert_eq!(q.status.code(), Some(0), "{}", String::from_utf8_lossy(&q.stderr));
    assert_eq!(json(&q)["dim"], 1);
    assert_eq!(run(&["quotient", path.to_str().unwrap(), "--ideal", "a"]).status.code(), Some(1));
    assert_eq!(run(&["quotient", path.to_str().unwrap(), "--ideal", "zz"]).status.code(), Some(2));
    assert_eq!(run(&["family", "cyclic", "--alphas", "1"]).status.code(), Some(2));
    assert_eq!(run(&["family", "sl2", "--q"]).status.code(), Some(0));
    assert_eq!(run(&["family", "jac", "--p", "4"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    for args in [
        ["verify", "--family", "cyclic", "--alphas", "1,2", "--gf", "3"].as_slice(),
        ["verify", "--family", "sl2", "--q"].as_slice(),
    ] {
        let go = || Command::new(BIN).args(args).args(["--suite", "all", "--seed", "0", "--json"]).output().unwrap();
        let (a, b) = (go(), go());
        assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
        assert_eq!(a.stdout, b.stdout);
    }
}
