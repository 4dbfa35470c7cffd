//! One pass/fail line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use gcover_core::selftest::{run_criterion, CRITERIA};

const CUTOFF: u64 = 100_000_000;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() as u32 {
        let start = Instant::now();
        let r = run_criterion(id, CUTOFF);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {} ({:.2?}): {}", r.id, r.name, start.elapsed(), r.detail);
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
