use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_space(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn classify_csv() {
    let dir = tempfile::tempdir().unwrap();
    let ge = write_space(dir.path(), "ge.json", r#"["w", "x y", "w x y z"]"#);
    let o = kfg(&["classify", "--space", &ge, "--subset", "0"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "space-id,subset-code,phi,psi,k,kf\nge,0,30,70,2,2\n"
    );
    let all = kfg(&["classify", "--space", &ge, "--subset", "all"]);
    assert_eq!(stdout(&all).lines().count(), 17);
}

#[test]
fn classify_reads_serialized_topology() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_space(dir.path(), "s.json", r#"{"n": 2, "closure": [0, 1, 3, 3]}"#);
    let o = kfg(&["classify", "--space", &s, "--subset", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().nth(1), Some("s,1,29,67,4,4"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let ge = write_space(dir.path(), "ge.json", r#"["w", "x y", "w x y z"]"#);
    let bad = write_space(dir.path(), "bad.json", r#"{"n": 1, "closure": [1, 1]}"#);
    for args in [
        vec!["classify", "--space", ge.as_str(), "--subset", "16"],
        vec!["classify", "--space", bad.as_str(), "--subset", "0"],
        vec!["verify-paper", "--suite", "table99"],
        vec!["monoid", "--space", ge.as_str(), "--generators", "q"],
        vec!["frobnicate"],
    ] {
        assert_eq!(kfg(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn monoid_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let ge = write_space(dir.path(), "ge.json", r#"["w", "x y", "w x y z"]"#);
    for (g, size) in [("ab", 14), ("abf", 34), ("abfg", 40)] {
        let o = kfg(&["monoid", "--space", &ge, "--generators", g]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).lines().count(), size + 1, "{g}");
    }
}

#[test]
fn sum_of_two_discrete_points() {
    let dir = tempfile::tempdir().unwrap();
    let d = write_space(dir.path(), "d.json", r#"["x"]"#);
    let o = kfg(&["sum", "--spaces", &d, &d]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["type"], "D");
    assert_eq!((v["k"].as_u64(), v["kf"].as_u64()), (Some(2), Some(4)));
    assert_eq!(v["psi"], serde_json::json!([68, 69, 70]));
}

#[test]
fn enumerate_uses_cache_and_refuses_stale_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.display().to_string();
    let first = kfg(&["enumerate", "--n", "4", "--cache", &c]);
    assert!(first.status.success());
    assert_eq!(stdout(&first).lines().count(), 34);
    let again = kfg(&["enumerate", "--n", "4", "--cache", &c]);
    assert_eq!(stdout(&again), stdout(&first));
    fs::write(cache.join("classes-n4.jsonl"), "").unwrap();
    let stale = kfg(&["enumerate", "--n", "4", "--cache", &c]);
    assert_eq!(stale.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&stale.stderr).contains("stale"));
}

#[test]
fn table5_csv() {
    let o = kfg(&["tables", "--name", "table5", "--max-n", "4"]);
    assert_eq!(
        stdout(&o),
        "n,GE,KD,ED,OU,EO,P,D,total\n1,0,0,0,0,0,0,1,1\n2,0,0,0,0,1,1,1,3\n3,0,0,1,1,4,2,1,9\n4,1,0,6,7,14,4,1,33\n"
    );
}

#[test]
fn verify_paper_json_is_deterministic() {
    let a = kfg(&[
        "verify-paper",
        "--suite",
        "global-collapses",
        "--max-n",
        "6",
        "--jobs",
        "1",
    ]);
    let b = kfg(&[
        "verify-paper",
        "--suite",
        "global-collapses",
        "--max-n",
        "6",
        "--jobs",
        "4",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["class_hashes"]["6"].as_str().map(str::len), Some(64));
    assert_eq!(v["suites"][0]["pass"], true);
}

#[test]
fn failing_suite_exits_one() {
    let o = kfg(&["verify-paper", "--suite", "topsum", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL GE X_3"));
}
