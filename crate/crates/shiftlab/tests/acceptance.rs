//! Acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line. The checks live in the library so the CLI's
//! `verify` command runs exactly the same code.

use shiftlab::acceptance::run_criterion;

fn run(id: u32) {
    let result = run_criterion(id);
    println!("{}", result.line());
    assert!(result.pass, "{}", result.line());
}

#[test]
fn criterion_01_conjugacy_metric_identities() {
    run(1);
}

#[test]
fn criterion_02_type_count_oracle() {
    run(2);
}

#[test]
fn criterion_03_stirling_control() {
    run(3);
}

#[test]
fn criterion_04_entropy_maximizer() {
    run(4);
}

#[test]
fn criterion_05_constructed_density_spectrum() {
    run(5);
}

#[test]
fn criterion_06_eventual_pair_envelope() {
    run(6);
}

#[test]
fn criterion_07_exact_pair_inclusions() {
    run(7);
}

#[test]
fn criterion_08_dimension_two_minus_q() {
    run(8);
}

#[test]
fn criterion_09_full_shift_normalization() {
    run(9);
}

#[test]
fn criterion_10_power_invariance() {
    run(10);
}

#[test]
fn criterion_11_classification_suite() {
    run(11);
}

#[test]
fn criterion_12_measure_trend_surrogates() {
    run(12);
}
