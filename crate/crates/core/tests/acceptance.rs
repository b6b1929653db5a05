//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use kappa_core::acceptance::{self, CriterionOutcome, DEFAULT_SEED};

fn check(number: u8) {
    let result: CriterionOutcome = acceptance::run(number, DEFAULT_SEED).expect("criterion exists");
    println!("{result}");
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_01_table_reproduction() {
    check(1);
}

#[test]
fn criterion_02_weyl_invariance() {
    check(2);
}

#[test]
fn criterion_03_kappa_infimum() {
    check(3);
}

#[test]
fn criterion_04_decomposition_round_trips() {
    check(4);
}

#[test]
fn criterion_05_spherical_decay() {
    check(5);
}

#[test]
fn criterion_06_holder_dichotomy() {
    check(6);
}

#[test]
fn criterion_07_leading_term() {
    check(7);
}

#[test]
fn criterion_08_compact_duality() {
    check(8);
}

#[test]
fn criterion_09_singular_blowup() {
    check(9);
}

#[test]
fn criterion_10_exp_sum_lower_bound() {
    check(10);
}
