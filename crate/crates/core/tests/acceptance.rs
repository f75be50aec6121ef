//! Runs every acceptance criterion through the suite runner and prints one
//! pass/fail line per criterion.

use std::time::Duration;

use lt_hkr::cli::suite::{run_suite, SuiteOptions, SuiteReport};

fn line(report: &SuiteReport, id: &str) -> bool {
    let e = report.entry(id).unwrap_or_else(|| panic!("criterion {id} was not run"));
    println!(
        "criterion {:>2}: {} - {} ({:.2} s)",
        id,
        if e.pass() { "PASS" } else { "FAIL" },
        e.title,
        e.elapsed.as_secs_f64()
    );
    if let Some(err) = &e.error {
        println!("              error: {err}");
    }
    for c in e.checks.iter().filter(|c| !c.pass) {
        println!("              failed: {} at {:?}", c.check, c.first_failure);
    }
    e.pass()
}

#[test]
fn acceptance() {
    let first = run_suite(&SuiteOptions::default()).expect("builtin corpus loads");
    let second = run_suite(&SuiteOptions::default()).expect("builtin corpus loads");

    let mut failed = Vec::new();
    assert!(first.entry("corpus").unwrap().pass(), "builtin corpus validates");
    for id in 1..=14 {
        let id = id.to_string();
        if !line(&first, &id) {
            failed.push(id);
        }
    }

    let a = serde_json::to_string_pretty(&first.to_json()).unwrap();
    let b = serde_json::to_string_pretty(&second.to_json()).unwrap();
    let deterministic = a == b && line(&first, "15");
    if a != b {
        println!("              failed: suite JSON differs between runs");
    }
    if !deterministic {
        failed.push("15".into());
    }

    let t1 = first.entry("1").unwrap().elapsed;
    let t10 = first.entry("10").unwrap().elapsed;
    println!("timing: criterion 1 {:.3} s (bound 5 s), criterion 10 {:.3} s (bound 60 s)", t1.as_secs_f64(), t10.as_secs_f64());
    if t1 >= Duration::from_secs(5) {
        failed.push("1 (runtime)".into());
    }
    if t10 >= Duration::from_secs(60) {
        failed.push("10 (runtime)".into());
    }

    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
