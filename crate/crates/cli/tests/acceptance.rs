//! One test per acceptance criterion. Each prints a PASS/FAIL line that
//! survives output capture, then asserts.

use std::io::Write;
use std::sync::OnceLock;

use orbitope::invariants::R0Options;
use orbitope_cli::suite::{self, Outcome, SuiteContext};

fn ctx() -> &'static SuiteContext {
    static CTX: OnceLock<SuiteContext> = OnceLock::new();
    CTX.get_or_init(|| SuiteContext::new(R0Options::default()))
}

fn check(f: fn(&SuiteContext) -> Outcome) {
    let o = f(ctx());
    let _ = writeln!(std::io::stdout(), "{}", o.line());
    assert!(o.passed, "{}", o.line());
}

#[test]
fn criterion_01_defining_representation() {
    check(suite::criterion_1);
}

#[test]
fn criterion_02_second_fundamental_weight() {
    check(suite::criterion_2);
}

#[test]
fn criterion_03_divisible_ranks() {
    check(suite::criterion_3);
}

#[test]
fn criterion_04_euclidean_sums_and_third_weight() {
    check(suite::criterion_4);
}

#[test]
fn criterion_05_half_spin_weights() {
    check(suite::criterion_5);
}

#[test]
fn criterion_06_self_dual_systems() {
    check(suite::criterion_6);
}

#[test]
fn criterion_07_r_tables() {
    check(suite::criterion_7);
}

#[test]
fn criterion_08_caratheodory() {
    check(suite::criterion_8);
}

#[test]
fn criterion_09_degree_bound() {
    check(suite::criterion_9);
}

#[test]
fn criterion_10_equal_pairing_condition() {
    check(suite::criterion_10);
}

#[test]
fn criterion_11_oracle_consistency() {
    check(suite::criterion_11);
}

#[test]
fn criterion_12_structural() {
    check(suite::criterion_12);
}
