//! Runs the nine acceptance criteria and prints one line per criterion.
//!
//! Lines go straight to stderr, which the test harness does not capture, so
//! they appear in the output of a passing run.

use std::io::Write;
use supertt::verify::{run_criterion, SuiteConfig};

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    let mut lines = String::from("\n");
    for id in 1..=9 {
        let report = run_criterion(id, &cfg).unwrap_or_else(|e| panic!("criterion {} did not run: {}", id, e));
        lines.push_str(&report.summary_line());
        lines.push('\n');
        for note in &report.recorded {
            lines.push_str(&format!("       {}\n", note));
        }
        if !report.passed {
            failed.push(id);
        }
    }
    let _ = std::io::stderr().write_all(lines.as_bytes());
    assert!(failed.is_empty(), "criteria {:?} failed", failed);
}
