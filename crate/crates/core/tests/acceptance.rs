//! The nine acceptance criteria, each within its runtime budget. Prints one
//! PASS/FAIL line per criterion and fails if any criterion fails.

use std::time::Instant;

use toric_kh::verify::{self, CriterionOutcome};

#[test]
fn acceptance_criteria() {
    let checks: [fn() -> CriterionOutcome; 9] = [
        verify::criterion_1,
        verify::criterion_2,
        verify::criterion_3,
        verify::criterion_4,
        verify::criterion_5,
        verify::criterion_6,
        verify::criterion_7,
        verify::criterion_8,
        verify::criterion_9,
    ];
    let mut failed = Vec::new();
    for check in checks {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if elapsed > outcome.limit {
            outcome.passed = false;
            outcome.detail = format!("{} (took {elapsed:.2?}, budget {:?})", outcome.detail, outcome.limit);
        }
        println!("{outcome} [{elapsed:.2?}]");
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
