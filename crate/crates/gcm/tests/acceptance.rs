//! The full reproduction suite; prints one PASS/FAIL line per criterion.

use gcm::verify::{run_all, VerifyConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    let reports = run_all(&VerifyConfig::default(), false, |r| {
        println!("{}", r.line())
    })
    .expect("suite runs");
    assert_eq!(reports.len(), CRITERIA.len());
    let failed: Vec<usize> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.id)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
