//! One test per acceptance criterion; each prints a single pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use modcancel::suite::{criterion, Depth};

fn run(id: u32) {
    let out = criterion(id, Depth::Quick);
    println!(
        "criterion {:>2} {}: {} ({:.2}s, budget {}s)",
        out.id,
        out.title,
        if out.passed { "PASS" } else { "FAIL" },
        out.seconds,
        out.budget_seconds
    );
    assert!(out.passed, "{:#?}", out.details);
}

#[test]
fn criterion_01_twelve_dimensional_formula() {
    run(1);
}

#[test]
fn criterion_02_modular_generators() {
    run(2);
}

#[test]
fn criterion_03_jacobi_identity() {
    run(3);
}

#[test]
fn criterion_04_twisted_instances() {
    run(4);
}

#[test]
fn criterion_05_degree_8k_plus_2() {
    run(5);
}

#[test]
fn criterion_06_degree_8k_plus_6() {
    run(6);
}

#[test]
fn criterion_07_general_formula_grid() {
    run(7);
}

#[test]
fn criterion_08_degenerate_cases() {
    run(8);
}

#[test]
fn criterion_09_route_consistency() {
    run(9);
}

#[test]
fn criterion_10_pushforward() {
    run(10);
}

#[test]
fn criterion_11_properties() {
    run(11);
}

#[test]
fn criterion_12_mutations() {
    run(12);
}
