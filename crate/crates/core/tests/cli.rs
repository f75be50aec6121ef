use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lt_hkr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lt-hkr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lt-hkr-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn documented_invocations() {
    let out = lt_hkr(&["fgl-verify", "--p", "2", "--n", "1", "--degree", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("functional equation"), "{text}");
    assert!(text.contains(": pass"));

    let q3 = corpus().join("fields/q3.json");
    let s3 = corpus().join("groups/s3.json");
    let out = lt_hkr(&["hkr-rank", "--field", q3.to_str().unwrap(), "--group", s3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().nth(1), Some("2"));

    let out = lt_hkr(&["genus", "--p", "3", "--n", "1", "--m", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().nth(1), Some("-1/8"));
}

#[test]
fn every_verb_runs() {
    let q2 = corpus().join("fields/q2_unramified_quadratic.json");
    let q2 = q2.to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["fgl-log", "--p", "3", "--degree", "10"],
        &["fgl-law", "--p", "2", "--n", "2", "--degree", "10"],
        &["fgl-endo", "--p", "2", "--a", "-1", "--b", "3", "--degree", "10"],
        &["fgl-endo", "--p", "2", "--n", "2", "--field", q2, "--b", "2", "--degree", "10"],
        &["fgl-araki", "--p", "2", "--n", "2"],
        &["lt-construct", "--field", q2, "--degree", "10", "--generator"],
        &["torsion", "--p", "2", "--n", "1", "--r", "2"],
        &["group-info", "--group", "A4"],
        &["hkr-classes", "--field", q2, "--group", "Q8"],
        &["hkr-scheme", "--field", q2, "--group", "Z4xZ2", "--frobenius"],
        &["hkr-check", "--field", q2, "--group", "D4"],
    ];
    for args in cases {
        let out = lt_hkr(&[args, &["--format", "json"][..]].concat());
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["pass"], serde_json::json!(true));
        assert_eq!(v["options"]["format"], serde_json::json!("json"));
    }
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(lt_hkr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lt_hkr(&["fgl-law", "--height", "3"]).status.code(), Some(2));
    assert_eq!(lt_hkr(&["fgl-law", "--p", "4"]).status.code(), Some(2));
    assert_eq!(lt_hkr(&["suite", "--corpus", "/nonexistent"]).status.code(), Some(2));
    // negative controls fail mathematically
    assert_eq!(lt_hkr(&["fgl-verify", "--kind", "additive", "--degree", "8"]).status.code(), Some(1));
    assert_eq!(lt_hkr(&["fgl-araki", "--kind", "multiplicative", "--degree", "8"]).status.code(), Some(1));

    let dir = scratch("bad-table");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name":"bad","order":3,"table":[[0,1,2],[1,2,0],[2,1,0]]}"#).unwrap();
    let out = lt_hkr(&["group-info", "--group", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["check"], serde_json::json!("group validation"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corrupted_corpus_fails_the_suite() {
    let dir = scratch("corpus");
    for sub in ["fields", "groups"] {
        std::fs::create_dir_all(dir.join(sub)).unwrap();
        for entry in std::fs::read_dir(corpus().join(sub)).unwrap() {
            let path = entry.unwrap().path();
            std::fs::copy(&path, dir.join(sub).join(path.file_name().unwrap())).unwrap();
        }
    }
    let dir_s = dir.to_str().unwrap();
    let out = lt_hkr(&["suite", "--corpus", dir_s, "--only", "13"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // swap two entries in one row of the Z6 table
    let z6 = dir.join("groups/z6.json");
    let mut spec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&z6).unwrap()).unwrap();
    let row = spec["table"][2].as_array_mut().unwrap();
    row.swap(1, 2);
    std::fs::write(&z6, spec.to_string()).unwrap();
    let out = lt_hkr(&["suite", "--corpus", dir_s, "--only", "13"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[FAIL] corpus"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_and_determinism() {
    let dir = scratch("output");
    let path = dir.join("scheme.json");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let out = lt_hkr(&["hkr-scheme", "--field", "Q2", "--group", "D4", "--format", "json", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        runs.push(std::fs::read(&path).unwrap());
    }
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
    std::fs::remove_dir_all(&dir).unwrap();
}
