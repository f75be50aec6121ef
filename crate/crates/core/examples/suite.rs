//! Runs the built-in reproducibility suite and prints its matrix.
//!
//!     cargo run --release --example suite -- hkr

use lt_hkr::cli::suite::{run_suite, SuiteOptions};

fn main() {
    let opts = SuiteOptions {
        only: std::env::args().skip(1).collect(),
        ..SuiteOptions::default()
    };
    let report = run_suite(&opts).unwrap();
    for line in report.text_lines() {
        println!("{line}");
    }
    std::process::exit(if report.pass() { 0 } else { 1 });
}
