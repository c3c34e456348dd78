//! Acceptance suite: one test per published criterion, each printing a
//! pass/fail line. The checks themselves live in `entop_cli::verify` so the
//! `verify` subcommand runs exactly the same suite.

use std::sync::OnceLock;

use entop_cli::verify::{run_checks, CheckResult};

static CHECKS: OnceLock<Vec<CheckResult>> = OnceLock::new();

fn checks() -> &'static [CheckResult] {
    CHECKS.get_or_init(|| run_checks(false))
}

fn assert_criterion(criterion: u8, label: &str) {
    let relevant: Vec<&CheckResult> =
        checks().iter().filter(|c| c.criterion == criterion).collect();
    assert!(!relevant.is_empty(), "criterion {criterion} has no checks");
    let failed: Vec<&&CheckResult> = relevant.iter().filter(|c| !c.pass).collect();
    for check in &failed {
        eprintln!("{}", check.render());
    }
    println!(
        "criterion {criterion} ({label}): {} [{} checks]",
        if failed.is_empty() { "PASS" } else { "FAIL" },
        relevant.len()
    );
    assert!(failed.is_empty(), "criterion {criterion}: {} checks failed", failed.len());
}

#[test]
fn criterion_1_cnot_golden_values() {
    assert_criterion(1, "cnot golden values by every route");
}

#[test]
fn criterion_2_figure_1_reproduction() {
    assert_criterion(2, "spin concurrence sweeps, maxima, period");
}

#[test]
fn criterion_3_parity_gate_table() {
    assert_criterion(3, "parity gate case table and limit");
}

#[test]
fn criterion_4_controlled_n_not() {
    assert_criterion(4, "controlled^N-NOT closed form vs spectrum");
}

#[test]
fn criterion_5_sigma_z_chain() {
    assert_criterion(5, "σz chain split independence");
}

#[test]
fn criterion_6_power_relation() {
    assert_criterion(6, "entangling power relation and swap reduction");
}

#[test]
fn criterion_7_property_suites() {
    assert_criterion(7, "measure properties");
}

#[test]
fn criterion_8_mc_determinism() {
    assert_criterion(8, "monte-carlo determinism in process");
}

#[test]
fn criterion_8_binary_output_is_bit_identical() {
    let exe = env!("CARGO_BIN_EXE_entop");
    let run = || {
        std::process::Command::new(exe)
            .args(["power", "cnot", "--method", "mc", "--seed", "42", "--samples", "20000"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "power command failed: {first:?}");
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "mc output differs between runs");
    println!("criterion 8 (binary runs): PASS [stdout bit-identical]");
}
