//! Acceptance suite: every structural identity and pipeline of the crate
//! at its pinned tolerance, one pass/fail line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use valgram::checks;

const SEED: u64 = 42;

fn run(outcome: checks::CheckOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.pass, "{}", outcome.line());
}

#[test]
fn criterion_01_closed_form_covariograms() {
    run(checks::closed_form_covariograms());
}

#[test]
fn criterion_02_integral_identity() {
    run(checks::integral_identity(SEED));
}

#[test]
fn criterion_03_derivative_witness() {
    run(checks::derivative_witness(SEED));
}

#[test]
fn criterion_04_core_criterion() {
    run(checks::core_criterion(SEED));
}

#[test]
fn criterion_05_symmetry_pipeline() {
    run(checks::symmetry_pipeline());
}

#[test]
fn criterion_06_scale_recovery() {
    run(checks::scale_recovery());
}

#[test]
fn criterion_07_prism_reflection() {
    run(checks::prism_reflection(SEED));
}

#[test]
fn criterion_08_prismatoid_pair() {
    run(checks::prismatoid_pair(SEED));
}

#[test]
fn criterion_09_chord_laws() {
    run(checks::chord_laws(SEED));
}

#[test]
fn criterion_10_sigma_density() {
    run(checks::sigma_density(SEED));
}

#[test]
fn criterion_11_concavity() {
    run(checks::concavity(SEED));
}
