//! Acceptance gate: runs every verification criterion and prints one
//! pass/fail line per criterion. Run with `--nocapture` to see the table
//! even on success.

use qbattery_cli::verify;

#[test]
fn acceptance_criteria() {
    let results = verify::run_all(1e-8);
    println!("{}", verify::render_table(&results));
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.name)
        .collect();
    assert!(
        failed.is_empty(),
        "{} criteria failed: {}",
        failed.len(),
        failed.join(", ")
    );
}
