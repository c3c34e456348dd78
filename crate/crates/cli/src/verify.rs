//! Self-verification suite behind `entop verify`: every published number and
//! cross-route identity, checked at a pinned tolerance. The integration
//! test suite asserts on the same checks.

use entop::gates::{
    cnnot_concurrence_closed, parity_gate_concurrence_closed, spin_concurrence_maxima,
    spin_coupling_concurrence_closed, zchain_concurrence_closed, GateSpec,
};
use entop::hs::{schmidt_spectrum, OperatorState};
use entop::measures::{
    concurrence_from_spectrum, concurrence_two_term, entangling_power_direct,
    entangling_power_mc, entangling_power_via_relation, exchange_entropy, linear_entropy,
    linear_entropy_fold4, linear_entropy_of_swapped, pure_state_concurrence,
    reduce_to_two_qubit, CapPolicy, TwoTermDecomposition,
};
use entop::sampling::{haar_unitary, RandomStream};
use entop::tensor::{kron, Bipartition, DenseMatrix};

use crate::render::mc_text;
use crate::sweep::{sweep_rows, theta_points, SweepFamily};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub tol: String,
    pub pass: bool,
    /// Monte-Carlo checks are skipped under `--quick`.
    pub mc: bool,
}

impl CheckResult {
    pub fn render(&self) -> String {
        format!(
            "[{}] c{}/{}: expected {}, got {}, tol {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.expected,
            self.got,
            self.tol
        )
    }
}

fn close(criterion: u8, name: &str, expected: f64, got: f64, tol: f64) -> CheckResult {
    CheckResult {
        criterion,
        name: name.into(),
        expected: format!("{expected}"),
        got: format!("{got}"),
        tol: format!("{tol:e}"),
        pass: (got - expected).abs() < tol,
        mc: false,
    }
}

fn exact(criterion: u8, name: &str, expected: impl ToString, got: impl ToString) -> CheckResult {
    let expected = expected.to_string();
    let got = got.to_string();
    CheckResult {
        criterion,
        name: name.into(),
        pass: expected == got,
        expected,
        got,
        tol: "exact".into(),
        mc: false,
    }
}

fn bound(criterion: u8, name: &str, description: &str, got: f64, limit: f64) -> CheckResult {
    CheckResult {
        criterion,
        name: name.into(),
        expected: description.into(),
        got: format!("{got}"),
        tol: format!("{limit:e}"),
        pass: got < limit,
        mc: false,
    }
}

pub fn run_checks(quick: bool) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    criterion1_cnot_golden(&mut checks, quick);
    criterion2_figure1(&mut checks);
    criterion3_parity_table(&mut checks);
    criterion4_cnnot(&mut checks);
    criterion5_zchain(&mut checks);
    criterion6_relation(&mut checks);
    criterion7_properties(&mut checks);
    if !quick {
        criterion8_determinism(&mut checks);
    }
    checks
}

fn criterion1_cnot_golden(checks: &mut Vec<CheckResult>, quick: bool) {
    let gate = GateSpec::Cnot.build().expect("cnot builds");
    let decomposition = GateSpec::Cnot.two_term().expect("cnot two-term");
    let spectrum = schmidt_spectrum(&gate).expect("cnot spectrum");

    let e_spectrum = linear_entropy(&spectrum);
    let e_fold4 = linear_entropy_fold4(&gate, CapPolicy::Enforce).expect("cnot fold-4");
    checks.push(close(1, "E-spectrum", 0.5, e_spectrum, 1e-9));
    checks.push(close(1, "E-fold4", 0.5, e_fold4, 1e-9));
    checks.push(bound(1, "E-route-agreement", "|spectrum - fold4|", (e_spectrum - e_fold4).abs(), 1e-9));

    let et = exchange_entropy(&gate, CapPolicy::Enforce).expect("cnot exchange");
    let et_swapped = linear_entropy_of_swapped(&gate).expect("cnot U*S entropy");
    checks.push(close(1, "Etilde-fold4", 0.75, et, 1e-9));
    checks.push(close(1, "Etilde-via-swap-spectrum", 0.75, et_swapped, 1e-9));
    checks.push(bound(1, "Etilde-route-agreement", "|fold4 - E(US)|", (et - et_swapped).abs(), 1e-9));

    let golden_ep = 2.0 / 9.0;
    let ep_direct = entangling_power_direct(&gate, CapPolicy::Enforce).expect("cnot direct");
    let ep_relation = entangling_power_via_relation(e_spectrum, et, gate.bipartition());
    checks.push(close(1, "ep-direct", golden_ep, ep_direct, 1e-9));
    checks.push(close(1, "ep-relation", golden_ep, ep_relation, 1e-9));
    checks.push(bound(
        1,
        "ep-route-agreement",
        "|direct - relation|",
        (ep_direct - ep_relation).abs(),
        1e-9,
    ));

    let c_spectrum = concurrence_from_spectrum(&spectrum).expect("cnot rank 2");
    let c_factors = concurrence_two_term(&decomposition).expect("cnot factors");
    let c_reduction =
        pure_state_concurrence(&reduce_to_two_qubit(&decomposition).expect("cnot reduction"));
    checks.push(close(1, "C-spectrum", 1.0, c_spectrum, 1e-9));
    checks.push(close(1, "C-two-term", 1.0, c_factors, 1e-9));
    checks.push(close(1, "C-reduction", 1.0, c_reduction, 1e-9));
    checks.push(bound(
        1,
        "C-route-agreement",
        "max pairwise",
        (c_spectrum - c_factors).abs().max((c_factors - c_reduction).abs()),
        1e-9,
    ));

    if !quick {
        let est = entangling_power_mc(&gate, 20_000, 42).expect("cnot mc");
        let mut check = bound(
            1,
            "ep-mc-within-4-std-errors",
            &format!("|mean - 2/9| with mean {}", est.mean),
            (est.mean - golden_ep).abs(),
            4.0 * est.std_error,
        );
        check.mc = true;
        checks.push(check);

        let repeat = entangling_power_mc(&gate, 20_000, 42).expect("cnot mc repeat");
        let mut check = exact(
            1,
            "ep-mc-seed-reproducible",
            format!("{:x}:{:x}", est.mean.to_bits(), est.std_error.to_bits()),
            format!("{:x}:{:x}", repeat.mean.to_bits(), repeat.std_error.to_bits()),
        );
        check.mc = true;
        checks.push(check);
    }
}

fn criterion2_figure1(checks: &mut Vec<CheckResult>) {
    let grid = theta_points(None, 400).expect("default grid");
    for two_j in [1u32, 2, 5] {
        let rows = sweep_rows(SweepFamily::Spin { two_j }, &grid).expect("spin sweep");
        let max_dev = rows
            .iter()
            .map(|r| (r.c_closed - r.c_numeric).abs())
            .fold(0.0, f64::max);
        checks.push(bound(
            2,
            &format!("spin-2j{two_j}-closed-vs-numeric"),
            "max |closed - numeric| over 400 points",
            max_dev,
            1e-9,
        ));

        let peaks = spin_concurrence_maxima(two_j, 400);
        let maximal = peaks.iter().filter(|(_, v)| *v > 1.0 - 1e-9).count();
        checks.push(exact(
            2,
            &format!("spin-2j{two_j}-maxima-count"),
            two_j,
            maximal,
        ));

        let period_dev = grid
            .iter()
            .map(|&theta| {
                (spin_coupling_concurrence_closed(theta, two_j)
                    - spin_coupling_concurrence_closed(theta + std::f64::consts::FRAC_PI_2, two_j))
                .abs()
            })
            .fold(0.0, f64::max);
        checks.push(bound(
            2,
            &format!("spin-2j{two_j}-period"),
            "max |C(θ) - C(θ+π/2)|",
            period_dev,
            1e-12,
        ));
    }
}

fn numeric_concurrences(spec: GateSpec) -> (f64, f64) {
    let gate = spec.build().expect("catalog gate builds");
    let via_spectrum = concurrence_from_spectrum(&schmidt_spectrum(&gate).expect("spectrum"))
        .expect("catalog rank <= 2");
    let via_factors = concurrence_two_term(&spec.two_term().expect("two-term")).expect("factors");
    (via_spectrum, via_factors)
}

fn criterion3_parity_table(checks: &mut Vec<CheckResult>) {
    let golden = [
        (2usize, 2usize, 1.0),
        (2, 3, 8f64.sqrt() / 3.0),
        (3, 2, 8f64.sqrt() / 3.0),
        (3, 3, 8.0 / 9.0),
    ];
    for (d1, d2, value) in golden {
        let closed = parity_gate_concurrence_closed(d1, d2);
        checks.push(close(3, &format!("parity-{d1}x{d2}-closed"), value, closed, 1e-12));
        let (via_spectrum, via_factors) = numeric_concurrences(GateSpec::Parity { d1, d2 });
        checks.push(close(3, &format!("parity-{d1}x{d2}-spectrum"), closed, via_spectrum, 1e-10));
        checks.push(close(3, &format!("parity-{d1}x{d2}-two-term"), closed, via_factors, 1e-10));
    }

    // Approach to the maximally entangled limit: the deviation from 1 does
    // not grow from d-2 to d, within each parity class.
    for d in [4usize, 5, 6] {
        let dev = 1.0 - parity_gate_concurrence_closed(d, d);
        let prev = 1.0 - parity_gate_concurrence_closed(d - 2, d - 2);
        checks.push(bound(
            3,
            &format!("parity-{d}x{d}-approach"),
            &format!("1 - C({d},{d}) <= 1 - C({},{})", d - 2, d - 2),
            dev,
            prev + 1e-12,
        ));
        let (via_spectrum, _) = numeric_concurrences(GateSpec::Parity { d1: d, d2: d });
        checks.push(close(
            3,
            &format!("parity-{d}x{d}-spectrum"),
            parity_gate_concurrence_closed(d, d),
            via_spectrum,
            1e-10,
        ));
    }
}

fn criterion4_cnnot(checks: &mut Vec<CheckResult>) {
    for n in 1..=4u32 {
        let mut max_dev: f64 = 0.0;
        let mut symmetric = true;
        for k in 1..=n {
            let closed = cnnot_concurrence_closed(n, k);
            let (via_spectrum, _) = numeric_concurrences(GateSpec::Cnnot { n, k });
            max_dev = max_dev.max((closed - via_spectrum).abs());
            symmetric &= closed.to_bits() == cnnot_concurrence_closed(n, n + 1 - k).to_bits();
        }
        checks.push(bound(
            4,
            &format!("cnnot-n{n}-closed-vs-spectrum"),
            "max |closed - spectrum| over k",
            max_dev,
            1e-9,
        ));
        checks.push(exact(4, &format!("cnnot-n{n}-split-symmetry"), true, symmetric));
    }
}

fn criterion5_zchain(checks: &mut Vec<CheckResult>) {
    let grid = theta_points(None, 50).expect("zchain grid");
    for n in 2..=5u32 {
        let mut max_dev: f64 = 0.0;
        for k in 1..n {
            for &theta in &grid {
                let gate = GateSpec::Zchain { theta, n, k }.build().expect("zchain");
                let c = concurrence_from_spectrum(&schmidt_spectrum(&gate).expect("spectrum"))
                    .expect("rank 2");
                max_dev = max_dev.max((c - zchain_concurrence_closed(theta)).abs());
            }
        }
        checks.push(bound(
            5,
            &format!("zchain-n{n}-all-splits"),
            "max |spectrum - |sin 2θ|| over k, θ",
            max_dev,
            1e-9,
        ));
    }
    checks.push(exact(
        5,
        "zchain-quarter-pi-maximal",
        1.0,
        zchain_concurrence_closed(std::f64::consts::FRAC_PI_4),
    ));
    checks.push(exact(5, "zchain-zero-disentangled", 0.0, zchain_concurrence_closed(0.0)));
}

fn criterion6_relation(checks: &mut Vec<CheckResult>) {
    for (d1, d2) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let bp = Bipartition::new(d1, d2).expect("bipartition");
        let stream = RandomStream::new(600);
        let mut max_dev: f64 = 0.0;
        for i in 0..50 {
            let u = OperatorState::new(
                haar_unitary(bp.dim(), stream.substream((d1 * 100 + d2 * 10) as u64 + i)),
                bp,
            )
            .expect("haar operator");
            let direct = entangling_power_direct(&u, CapPolicy::Enforce).expect("direct");
            let e = linear_entropy(&schmidt_spectrum(&u).expect("spectrum"));
            let et = exchange_entropy(&u, CapPolicy::Enforce).expect("exchange");
            let relation = entangling_power_via_relation(e, et, bp);
            max_dev = max_dev.max((direct - relation).abs());
        }
        checks.push(bound(
            6,
            &format!("relation-haar-{d1}x{d2}"),
            "max |direct - relation| over 50 unitaries",
            max_dev,
            1e-9,
        ));
    }

    for d in [2usize, 3] {
        let bp = Bipartition::new(d, d).expect("bipartition");
        let stream = RandomStream::new(650);
        let mut max_dev: f64 = 0.0;
        for i in 0..10 {
            let u = OperatorState::new(
                haar_unitary(bp.dim(), stream.substream(d as u64 * 20 + i)),
                bp,
            )
            .expect("haar operator");
            let et = exchange_entropy(&u, CapPolicy::Enforce).expect("exchange");
            let e_us = linear_entropy_of_swapped(&u).expect("E(US)");
            max_dev = max_dev.max((et - e_us).abs());
        }
        checks.push(bound(
            6,
            &format!("swap-specialization-d{d}"),
            "max |Etilde(U) - E(U S)| over 10 unitaries",
            max_dev,
            1e-9,
        ));

        let swap = GateSpec::Swap { d }.build().expect("swap");
        let e_s = linear_entropy(&schmidt_spectrum(&swap).expect("spectrum"));
        checks.push(close(
            6,
            &format!("swap-entropy-d{d}"),
            1.0 - 1.0 / (d * d) as f64,
            e_s,
            1e-12,
        ));
    }
}

fn criterion7_properties(checks: &mut Vec<CheckResult>) {
    // E = C²/2 on rank-2 catalog gates over a θ grid.
    let grid = theta_points(None, 50).expect("property grid");
    let mut specs = vec![
        GateSpec::Cnot,
        GateSpec::Parity { d1: 2, d2: 2 },
        GateSpec::Parity { d1: 2, d2: 3 },
        GateSpec::Parity { d1: 3, d2: 3 },
        GateSpec::Cnnot { n: 2, k: 1 },
        GateSpec::Cnnot { n: 3, k: 2 },
    ];
    for &theta in &grid {
        specs.push(GateSpec::Spin { theta, two_j: 2 });
        specs.push(GateSpec::Zchain { theta, n: 2, k: 1 });
    }
    let mut max_dev: f64 = 0.0;
    for spec in &specs {
        let gate = spec.build().expect("catalog gate");
        let spectrum = schmidt_spectrum(&gate).expect("spectrum");
        let e = linear_entropy(&spectrum);
        let c = concurrence_from_spectrum(&spectrum).expect("rank 2");
        max_dev = max_dev.max((e - c * c / 2.0).abs());
    }
    checks.push(bound(7, "entropy-is-half-squared-concurrence", "max |E - C²/2|", max_dev, 1e-9));

    // Local-unitary invariance of the spectrum and the concurrence.
    let gate = GateSpec::Spin { theta: 0.37, two_j: 2 }.build().expect("spin gate");
    let bp = gate.bipartition();
    let base_spectrum = schmidt_spectrum(&gate).expect("spectrum");
    let base_c = concurrence_from_spectrum(&base_spectrum).expect("rank 2");
    let stream = RandomStream::new(700);
    let mut max_dev: f64 = 0.0;
    for i in 0..20 {
        let left = kron(
            &haar_unitary(bp.d1(), stream.substream(4 * i)),
            &haar_unitary(bp.d2(), stream.substream(4 * i + 1)),
        )
        .expect("local pair");
        let right = kron(
            &haar_unitary(bp.d1(), stream.substream(4 * i + 2)),
            &haar_unitary(bp.d2(), stream.substream(4 * i + 3)),
        )
        .expect("local pair");
        let transformed =
            OperatorState::new(left.matmul(gate.op()).matmul(&right), bp).expect("transformed");
        let spectrum = schmidt_spectrum(&transformed).expect("spectrum");
        for (a, b) in base_spectrum.lambdas().iter().zip(spectrum.lambdas()) {
            max_dev = max_dev.max((a - b).abs());
        }
        let c = concurrence_from_spectrum(&spectrum).expect("rank 2");
        max_dev = max_dev.max((c - base_c).abs());
    }
    checks.push(bound(
        7,
        "local-unitary-invariance",
        "max spectrum/concurrence drift over 20 local pairs",
        max_dev,
        1e-9,
    ));

    // Hermitian conjugation invariance.
    let mut max_dev: f64 = 0.0;
    for spec in [
        GateSpec::Cnot,
        GateSpec::Spin { theta: 0.91, two_j: 3 },
        GateSpec::Zchain { theta: 0.33, n: 3, k: 1 },
        GateSpec::Parity { d1: 2, d2: 3 },
    ] {
        let gate = spec.build().expect("catalog gate");
        let dagger =
            OperatorState::new(gate.op().adjoint(), gate.bipartition()).expect("dagger");
        let spectrum = schmidt_spectrum(&gate).expect("spectrum");
        let spectrum_dagger = schmidt_spectrum(&dagger).expect("spectrum");
        let e = linear_entropy(&spectrum);
        let e_dagger = linear_entropy(&spectrum_dagger);
        let c = concurrence_from_spectrum(&spectrum).expect("rank 2");
        let c_dagger = concurrence_from_spectrum(&spectrum_dagger).expect("rank 2");
        max_dev = max_dev.max((e - e_dagger).abs()).max((c - c_dagger).abs());
    }
    checks.push(bound(7, "conjugation-invariance", "max |f(U†) - f(U)|", max_dev, 1e-10));

    // Separability: a proportional side kills the concurrence exactly;
    // perturbing it away revives it.
    let a1 = DenseMatrix::from_real(2, 2, &[0.5, -0.25, 0.75, 1.0]);
    let b1 = a1.scale(num_complex::Complex64::new(-1.5, 0.0));
    let a2 = DenseMatrix::identity(3);
    let b2 = entop::gates::parity_op(3);
    let proportional = TwoTermDecomposition::new(
        num_complex::Complex64::new(1.0, 0.0),
        a1.clone(),
        a2.clone(),
        num_complex::Complex64::new(0.5, 0.5),
        b1.clone(),
        b2.clone(),
    )
    .expect("decomposition");
    checks.push(exact(
        7,
        "separability-proportional-side",
        0.0,
        concurrence_two_term(&proportional).expect("concurrence"),
    ));

    let perturbed = TwoTermDecomposition::new(
        num_complex::Complex64::new(1.0, 0.0),
        a1,
        a2,
        num_complex::Complex64::new(0.5, 0.5),
        b1.add(&DenseMatrix::from_real(2, 2, &[0.0, 0.05, 0.0, 0.0])),
        b2,
    )
    .expect("decomposition");
    let c = concurrence_two_term(&perturbed).expect("concurrence");
    let mut result = bound(7, "separability-perturbed", "C stays above", 1e-6, c);
    result.expected = "C > 1e-6".into();
    result.got = format!("{c}");
    result.tol = "1e-6 lower bound".into();
    result.pass = c > 1e-6;
    checks.push(result);
}

fn criterion8_determinism(checks: &mut Vec<CheckResult>) {
    let gate = GateSpec::Cnot.build().expect("cnot");
    let first = entangling_power_mc(&gate, 20_000, 42).expect("mc");
    let second = entangling_power_mc(&gate, 20_000, 42).expect("mc");
    let mut check = exact(8, "mc-output-bit-identical", mc_text(&first), mc_text(&second));
    check.mc = true;
    checks.push(check);

    let mut check = exact(
        8,
        "mc-estimate-bit-identical",
        format!("{:x}:{:x}", first.mean.to_bits(), first.std_error.to_bits()),
        format!("{:x}:{:x}", second.mean.to_bits(), second.std_error.to_bits()),
    );
    check.mc = true;
    checks.push(check);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_and_skips_mc() {
        let checks = run_checks(true);
        assert!(checks.iter().all(|c| !c.mc));
        for check in &checks {
            assert!(check.pass, "{}", check.render());
        }
    }
}
