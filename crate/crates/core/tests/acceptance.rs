use std::io::Write;

use workbench::suite::{run_by_id, Profile, SuiteConfig, DEFAULT_SEED};

fn criterion(id: u8) {
    let cfg = SuiteConfig::new(Profile::Full, DEFAULT_SEED);
    let outcome = run_by_id(id, &cfg).expect("criterion id");
    // straight to the handle so the line shows without --nocapture
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", outcome.summary_line()).unwrap();
    for c in outcome.failures().iter().take(10) {
        writeln!(out, "    {} {}", c.name, c.details).unwrap();
    }
    drop(out);
    assert!(outcome.passed, "{}", outcome.summary_line());
}

#[test]
fn c01_pell_laws() {
    criterion(1);
}

#[test]
fn c02_singlefold_integers() {
    criterion(2);
}

#[test]
fn c03_exponentiation_system() {
    criterion(3);
}

#[test]
fn c04_odd_integer_system() {
    criterion(4);
}

#[test]
fn c05_nonneg_gadget() {
    criterion(5);
}

#[test]
fn c06_cyclotomic_base() {
    criterion(6);
}

#[test]
fn c07_forweak_approximation() {
    criterion(7);
}

#[test]
fn c08_approximation_point() {
    criterion(8);
}

#[test]
fn c09_resultant_divisibility() {
    criterion(9);
}

#[test]
fn c10_hilbert_symbols() {
    criterion(10);
}

#[test]
fn c11_xi_constructors() {
    criterion(11);
}

#[test]
fn c12_theta_and_par() {
    criterion(12);
}

#[test]
fn c13_four_squares() {
    criterion(13);
}
