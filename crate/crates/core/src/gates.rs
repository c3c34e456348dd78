//! Constructors for the operator families whose entanglement has a closed
//! form: the spin-coupling gate on 2 x (2j+1), the parity interaction, the
//! Controlled^N-NOT family, the σz chain, and the swap operator, plus the
//! elementary operators they are assembled from.
//!
//! Every family carries its closed-form concurrence and (except swap) its
//! two-term decomposition, so the analytic and numeric routes can check each
//! other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hs::OperatorState;
use crate::measures::TwoTermDecomposition;
use crate::tensor::{kron_all, swap_operator, Bipartition, DenseMatrix, SubsystemLayout};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn sigma_x() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn sigma_y() -> DenseMatrix {
    DenseMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
        .expect("static entries")
}

pub fn sigma_z() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// `J_z = diag(j, j-1, .., -j)` with `j = two_j / 2`.
pub fn jz(two_j: u32) -> DenseMatrix {
    let j = two_j as f64 / 2.0;
    let diag: Vec<Complex64> = (0..=two_j).map(|k| c(j - k as f64, 0.0)).collect();
    DenseMatrix::from_diag(&diag)
}

/// Parity operator `diag((-1)^n)`, `n = 0 .. d-1`; its trace is 1 for odd
/// and 0 for even `d`.
pub fn parity_op(d: usize) -> DenseMatrix {
    let diag: Vec<Complex64> =
        (0..d).map(|n| c(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
    DenseMatrix::from_diag(&diag)
}

/// Number operator `diag(0, 1, .., 2j)`.
pub fn number_op(two_j: u32) -> DenseMatrix {
    let diag: Vec<Complex64> = (0..=two_j).map(|n| c(n as f64, 0.0)).collect();
    DenseMatrix::from_diag(&diag)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Projector `P_α = (1 - σ_α) / 2` onto the -1 eigenspace of a Pauli.
pub fn pauli_projector(axis: Axis) -> DenseMatrix {
    let sigma = match axis {
        Axis::X => sigma_x(),
        Axis::Y => sigma_y(),
        Axis::Z => sigma_z(),
    };
    DenseMatrix::identity(2).sub(&sigma).scale(c(0.5, 0.0))
}

fn operator_state(op: DenseMatrix, d1: usize, d2: usize) -> Result<OperatorState> {
    OperatorState::new(op, Bipartition::new(d1, d2)?)
}

/// Tagged parameters of every catalog family. The names are the CLI contract.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateSpec {
    Cnot,
    /// Controlled^N-NOT split into the first `k` of `n + 1` qubits.
    Cnnot { n: u32, k: u32 },
    /// Spin-1/2 to spin-j coupling `exp(-i 2θ σz ⊗ Jz)`.
    Spin { theta: f64, two_j: u32 },
    /// Parity interaction `exp(-iπ N1 ⊗ N2)` on `d1 x d2`.
    Parity { d1: usize, d2: usize },
    /// σz chain `exp(-iθ σz^⊗n)` split into the first `k` qubits.
    Zchain { theta: f64, n: u32, k: u32 },
    Swap { d: usize },
}

impl GateSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GateSpec::Cnot => "cnot",
            GateSpec::Cnnot { .. } => "cnnot",
            GateSpec::Spin { .. } => "spin",
            GateSpec::Parity { .. } => "parity",
            GateSpec::Zchain { .. } => "zchain",
            GateSpec::Swap { .. } => "swap",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GateSpec::Cnot => Ok(()),
            GateSpec::Cnnot { n, k } => {
                if n < 1 || k < 1 || k > n {
                    return Err(Error::InvalidParameter(format!(
                        "cnnot needs 1 <= k <= n, got n={n} k={k}"
                    )));
                }
                Ok(())
            }
            GateSpec::Spin { theta, two_j } => {
                if !theta.is_finite() {
                    return Err(Error::InvalidParameter("spin theta must be finite".into()));
                }
                if two_j < 1 {
                    return Err(Error::InvalidParameter("spin needs two_j >= 1".into()));
                }
                Ok(())
            }
            GateSpec::Parity { d1, d2 } => {
                if d1 < 2 || d2 < 2 {
                    return Err(Error::InvalidParameter("parity needs d1, d2 >= 2".into()));
                }
                Ok(())
            }
            GateSpec::Zchain { theta, n, k } => {
                if !theta.is_finite() {
                    return Err(Error::InvalidParameter("zchain theta must be finite".into()));
                }
                if n < 2 || k < 1 || k > n - 1 {
                    return Err(Error::InvalidParameter(format!(
                        "zchain needs n >= 2 and 1 <= k <= n-1, got n={n} k={k}"
                    )));
                }
                Ok(())
            }
            GateSpec::Swap { d } => {
                if d < 2 {
                    return Err(Error::InvalidParameter("swap needs d >= 2".into()));
                }
                Ok(())
            }
        }
    }

    pub fn bipartition(&self) -> Result<Bipartition> {
        self.validate()?;
        let (d1, d2) = match *self {
            GateSpec::Cnot => (2, 2),
            GateSpec::Cnnot { n, k } => (1usize << k, 1usize << (n + 1 - k)),
            GateSpec::Spin { two_j, .. } => (2, two_j as usize + 1),
            GateSpec::Parity { d1, d2 } => (d1, d2),
            GateSpec::Zchain { n, k, .. } => (1usize << k, 1usize << (n - k)),
            GateSpec::Swap { d } => (d, d),
        };
        Bipartition::new(d1, d2)
    }

    pub fn build(&self) -> Result<OperatorState> {
        self.validate()?;
        match *self {
            GateSpec::Cnot => cnot_gate(),
            GateSpec::Cnnot { n, k } => cnnot_gate(n, k),
            GateSpec::Spin { theta, two_j } => spin_coupling_gate(theta, two_j),
            GateSpec::Parity { d1, d2 } => parity_gate(d1, d2),
            GateSpec::Zchain { theta, n, k } => zchain_gate(theta, n, k),
            GateSpec::Swap { d } => swap_gate(d),
        }
    }

    /// The family's closed-form concurrence, when the family has one
    /// (swap does not: its Schmidt rank is d²).
    pub fn closed_form_concurrence(&self) -> Option<f64> {
        match *self {
            GateSpec::Cnot => Some(1.0),
            GateSpec::Cnnot { n, k } => Some(cnnot_concurrence_closed(n, k)),
            GateSpec::Spin { theta, two_j } => Some(spin_coupling_concurrence_closed(theta, two_j)),
            GateSpec::Parity { d1, d2 } => Some(parity_gate_concurrence_closed(d1, d2)),
            GateSpec::Zchain { theta, .. } => Some(zchain_concurrence_closed(theta)),
            GateSpec::Swap { .. } => None,
        }
    }

    pub fn two_term(&self) -> Result<TwoTermDecomposition> {
        two_term_decomposition(self)
    }
}

/// The standard controlled-NOT, `cnnot(1, 1)`.
pub fn cnot_gate() -> Result<OperatorState> {
    cnnot_gate(1, 1)
}

/// `exp(-i 2θ σz ⊗ Jz)`: diagonal phases `exp(-i 2θ s m)` over the σz
/// eigenvalue `s = ±1` and the Jz eigenvalue `m = j .. -j`.
pub fn spin_coupling_gate(theta: f64, two_j: u32) -> Result<OperatorState> {
    GateSpec::Spin { theta, two_j }.validate()?;
    let d2 = two_j as usize + 1;
    let j = two_j as f64 / 2.0;
    let mut diag = Vec::with_capacity(2 * d2);
    for s in [1.0, -1.0] {
        for k in 0..d2 {
            let m = j - k as f64;
            diag.push(Complex64::cis(-2.0 * theta * s * m));
        }
    }
    operator_state(DenseMatrix::from_diag(&diag), 2, d2)
}

/// Closed-form concurrence of the spin-coupling gate,
/// `sqrt(1 - x² / (2j+1)²)` with `x = Σ_{m=-j..j} cos(4 m θ)`.
///
/// The finite sum is used rather than the ratio `sin(2(2j+1)θ)/sin(2θ)`,
/// which is 0/0 at multiples of π/2.
pub fn spin_coupling_concurrence_closed(theta: f64, two_j: u32) -> f64 {
    let j = two_j as f64 / 2.0;
    let x: f64 = (0..=two_j).map(|k| (4.0 * (j - k as f64) * theta).cos()).sum();
    let ratio = x / (two_j as f64 + 1.0);
    (1.0 - ratio * ratio).max(0.0).sqrt()
}

/// Refined maxima of the spin concurrence on the open interval (0, π/2).
///
/// Scans a uniform grid, then sharpens each interior local maximum by golden
/// section; returns `(theta, value)` pairs in increasing theta order.
pub fn spin_concurrence_maxima(two_j: u32, grid: usize) -> Vec<(f64, f64)> {
    assert!(grid >= 3, "need at least 3 grid points");
    let span = std::f64::consts::FRAC_PI_2;
    let f = |theta: f64| spin_coupling_concurrence_closed(theta, two_j);
    let theta_at = |i: usize| (i + 1) as f64 * span / (grid + 1) as f64;
    let values: Vec<f64> = (0..grid).map(|i| f(theta_at(i))).collect();

    let mut peaks = Vec::new();
    for i in 1..grid - 1 {
        if values[i] > values[i - 1] && values[i] >= values[i + 1] {
            peaks.push(golden_section_max(f, theta_at(i - 1), theta_at(i + 1)));
        }
    }
    peaks
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..90 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Parity interaction `exp(-iπ N1 ⊗ N2)`: diagonal entries `(-1)^{n1 n2}`.
/// Self-inverse, and equal to `(1+Π1)/2 ⊗ 1 + (1-Π1)/2 ⊗ Π2`.
pub fn parity_gate(d1: usize, d2: usize) -> Result<OperatorState> {
    GateSpec::Parity { d1, d2 }.validate()?;
    let mut diag = Vec::with_capacity(d1 * d2);
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            diag.push(c(if (n1 * n2) % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
        }
    }
    operator_state(DenseMatrix::from_diag(&diag), d1, d2)
}

/// Closed-form concurrence of the parity gate,
/// `sqrt((1 - tr(Π1)²/d1²)(1 - tr(Π2)²/d2²))` with `tr(Π) = (1-(-1)^d)/2`.
pub fn parity_gate_concurrence_closed(d1: usize, d2: usize) -> f64 {
    let factor = |d: usize| {
        let tr = if d % 2 == 0 { 0.0f64 } else { 1.0 };
        1.0 - tr * tr / (d * d) as f64
    };
    (factor(d1) * factor(d2)).sqrt()
}

/// Controlled^N-NOT on `n + 1` qubits: flips the last qubit iff the first
/// `n` are all `|1>`. Split as `2^k x 2^{n+1-k}`.
pub fn cnnot_gate(n: u32, k: u32) -> Result<OperatorState> {
    GateSpec::Cnnot { n, k }.validate()?;
    let bp = GateSpec::Cnnot { n, k }.bipartition()?;
    let dim = bp.dim();
    let mut u = DenseMatrix::identity(dim);
    // Only |1..10> and |1..11> are exchanged.
    let flip0 = dim - 2;
    let flip1 = dim - 1;
    u[(flip0, flip0)] = c(0.0, 0.0);
    u[(flip1, flip1)] = c(0.0, 0.0);
    u[(flip0, flip1)] = c(1.0, 0.0);
    u[(flip1, flip0)] = c(1.0, 0.0);
    operator_state(u, bp.d1(), bp.d2())
}

/// Closed-form concurrence `2^{1-n} sqrt((2^k - 1)(2^{n+1-k} - 1))`,
/// symmetric under `k <-> n+1-k`.
pub fn cnnot_concurrence_closed(n: u32, k: u32) -> f64 {
    let left = (1u64 << k) - 1;
    let right = (1u64 << (n + 1 - k)) - 1;
    2f64.powi(1 - n as i32) * ((left * right) as f64).sqrt()
}

/// σz chain `exp(-iθ σz^⊗n)`: diagonal phases `exp(∓iθ)` by the parity of
/// the basis bit-string. The matrix does not depend on the split `k`; only
/// the bipartition label does.
pub fn zchain_gate(theta: f64, n: u32, k: u32) -> Result<OperatorState> {
    GateSpec::Zchain { theta, n, k }.validate()?;
    let bp = GateSpec::Zchain { theta, n, k }.bipartition()?;
    let dim = bp.dim();
    let diag: Vec<Complex64> = (0..dim)
        .map(|b| {
            let sign = if (b as u64).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::cis(-theta * sign)
        })
        .collect();
    operator_state(DenseMatrix::from_diag(&diag), bp.d1(), bp.d2())
}

/// Closed-form concurrence of the σz chain, `|sin 2θ|` for every split.
pub fn zchain_concurrence_closed(theta: f64) -> f64 {
    (2.0 * theta).sin().abs()
}

/// Swap operator on `d x d`, `S|ij> = |ji>`.
pub fn swap_gate(d: usize) -> Result<OperatorState> {
    GateSpec::Swap { d }.validate()?;
    let layout = SubsystemLayout::new(vec![d, d])?;
    operator_state(swap_operator(&layout, 0, 1)?, d, d)
}

fn kron_power(m: &DenseMatrix, count: u32) -> Result<DenseMatrix> {
    let factors: Vec<&DenseMatrix> = (0..count).map(|_| m).collect();
    kron_all(&factors)
}

/// Two-term form `μ A1⊗A2 + ν B1⊗B2` of a catalog gate. Swap has no such
/// form (its Schmidt rank is d²).
pub fn two_term_decomposition(spec: &GateSpec) -> Result<TwoTermDecomposition> {
    spec.validate()?;
    match *spec {
        GateSpec::Cnot => two_term_decomposition(&GateSpec::Cnnot { n: 1, k: 1 }),
        GateSpec::Cnnot { n, k } => {
            let pz = pauli_projector(Axis::Z);
            let a1 = DenseMatrix::identity(1 << k);
            let a2 = DenseMatrix::identity(1 << (n + 1 - k));
            let b1 = kron_power(&pz, k)?;
            let b2 = kron_all(&[&kron_power(&pz, n - k)?, &pauli_projector(Axis::X)])?;
            TwoTermDecomposition::new(c(1.0, 0.0), a1, a2, c(-2.0, 0.0), b1, b2)
        }
        GateSpec::Spin { theta, two_j } => {
            let d2 = two_j as usize + 1;
            let j = two_j as f64 / 2.0;
            let cos_diag: Vec<Complex64> =
                (0..d2).map(|k| c((2.0 * (j - k as f64) * theta).cos(), 0.0)).collect();
            let sin_diag: Vec<Complex64> =
                (0..d2).map(|k| c((2.0 * (j - k as f64) * theta).sin(), 0.0)).collect();
            TwoTermDecomposition::new(
                c(1.0, 0.0),
                DenseMatrix::identity(2),
                DenseMatrix::from_diag(&cos_diag),
                c(0.0, -1.0),
                sigma_z(),
                DenseMatrix::from_diag(&sin_diag),
            )
        }
        GateSpec::Parity { d1, d2 } => {
            let pi1 = parity_op(d1);
            let id1 = DenseMatrix::identity(d1);
            let a1 = id1.add(&pi1).scale(c(0.5, 0.0));
            let b1 = id1.sub(&pi1).scale(c(0.5, 0.0));
            TwoTermDecomposition::new(
                c(1.0, 0.0),
                a1,
                DenseMatrix::identity(d2),
                c(1.0, 0.0),
                b1,
                parity_op(d2),
            )
        }
        GateSpec::Zchain { theta, n, k } => TwoTermDecomposition::new(
            c(theta.cos(), 0.0),
            DenseMatrix::identity(1 << k),
            DenseMatrix::identity(1 << (n - k)),
            c(0.0, -theta.sin()),
            kron_power(&sigma_z(), k)?,
            kron_power(&sigma_z(), n - k)?,
        ),
        GateSpec::Swap { .. } => Err(Error::InvalidParameter(
            "swap has no two-term decomposition (Schmidt rank d²)".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::{hs_inner, schmidt_spectrum};
    use crate::measures::{
        concurrence_from_spectrum, concurrence_two_term, entangling_power_direct, linear_entropy,
        CapPolicy,
    };
    use crate::tensor::{check_unitary, kron, UNITARY_TOL};

    #[test]
    fn elementary_operator_examples() {
        for d in 2..=7 {
            let expected = if d % 2 == 0 { 0.0 } else { 1.0 };
            assert_eq!(parity_op(d).trace(), c(expected, 0.0));
        }
        assert_eq!(jz(1).entries()[0], c(0.5, 0.0));
        assert_eq!(jz(1).entries()[3], c(-0.5, 0.0));

        let pz = pauli_projector(Axis::Z);
        assert_eq!(pz.max_abs_diff(&DenseMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0])), 0.0);
        assert!(pz.matmul(&pz).max_abs_diff(&pz) < 1e-15);

        assert_eq!(number_op(2).entries()[8], c(2.0, 0.0));
    }

    #[test]
    fn spin_gate_examples() {
        let id = spin_coupling_gate(0.0, 3).unwrap();
        assert_eq!(id.op().max_abs_diff(&DenseMatrix::identity(8)), 0.0);

        let u = spin_coupling_gate(std::f64::consts::FRAC_PI_4, 1).unwrap();
        let phase = std::f64::consts::FRAC_PI_4;
        let expected = DenseMatrix::from_diag(&[
            Complex64::cis(-phase),
            Complex64::cis(phase),
            Complex64::cis(phase),
            Complex64::cis(-phase),
        ]);
        assert!(u.op().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn spin_gate_is_unitary_and_matches_its_two_term_form() {
        for i in 0..20 {
            let theta = -1.0 + 0.37 * i as f64;
            let two_j = 1 + (i as u32 % 6);
            let gate = spin_coupling_gate(theta, two_j).unwrap();
            assert!(check_unitary(gate.op(), UNITARY_TOL).is_unitary());
            // The cos/sin split materializes to the same diagonal.
            let d = two_term_decomposition(&GateSpec::Spin { theta, two_j }).unwrap();
            assert!(d.materialize().max_abs_diff(gate.op()) < 1e-12);
        }
    }

    #[test]
    fn spin_concurrence_closed_form() {
        // j = 1/2 collapses to |sin 2θ|.
        for i in 0..50 {
            let theta = i as f64 * 0.05;
            let closed = spin_coupling_concurrence_closed(theta, 1);
            assert!((closed - (2.0 * theta).sin().abs()) < 1e-12);
        }
        assert_eq!(spin_coupling_concurrence_closed(0.0, 4), 0.0);

        // twoJ = 2 at θ = π/6 is maximally entangled; cross-check against the
        // two-term route on the explicit matrix.
        let theta = std::f64::consts::FRAC_PI_6;
        assert!((spin_coupling_concurrence_closed(theta, 2) - 1.0).abs() < 1e-12);
        let d = two_term_decomposition(&GateSpec::Spin { theta, two_j: 2 }).unwrap();
        assert!((concurrence_two_term(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_concurrence_is_periodic() {
        for two_j in [1u32, 2, 5] {
            for i in 0..60 {
                let theta = i as f64 * 0.03;
                let a = spin_coupling_concurrence_closed(theta, two_j);
                let b = spin_coupling_concurrence_closed(theta + std::f64::consts::FRAC_PI_2, two_j);
                assert!((a - b).abs() < 1e-12, "two_j {two_j} theta {theta}");
            }
        }
    }

    #[test]
    fn spin_concurrence_maxima_count_matches_two_j() {
        for two_j in [1u32, 2, 5] {
            let peaks = spin_concurrence_maxima(two_j, 400);
            let high: Vec<_> = peaks.iter().filter(|(_, v)| *v > 1.0 - 1e-9).collect();
            assert_eq!(high.len(), two_j as usize, "two_j {two_j}: {peaks:?}");
        }
    }

    #[test]
    fn parity_gate_examples() {
        let u = parity_gate(2, 2).unwrap();
        let cz = DenseMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(u.op().max_abs_diff(&cz), 0.0);

        for (d1, d2) in [(2, 3), (3, 3)] {
            let u = parity_gate(d1, d2).unwrap();
            let square = u.op().matmul(u.op());
            assert_eq!(square.max_abs_diff(&DenseMatrix::identity(d1 * d2)), 0.0);
        }
    }

    #[test]
    fn parity_gate_exponential_and_projector_routes_agree() {
        for (d1, d2) in [(2, 2), (2, 3), (3, 3), (4, 5)] {
            let gate = parity_gate(d1, d2).unwrap();

            // Route 1: literal exp(-iπ n1 n2) phases.
            let exponential = DenseMatrix::from_diag(
                &(0..d1 * d2)
                    .map(|i| {
                        let (n1, n2) = (i / d2, i % d2);
                        Complex64::cis(-std::f64::consts::PI * (n1 * n2) as f64)
                    })
                    .collect::<Vec<_>>(),
            );
            assert!(gate.op().max_abs_diff(&exponential) < 1e-12);

            // Route 2: the projector form, which is also its two-term form.
            let d = two_term_decomposition(&GateSpec::Parity { d1, d2 }).unwrap();
            assert!(d.materialize().max_abs_diff(gate.op()) < 1e-12);
        }
    }

    #[test]
    fn parity_two_term_factors_satisfy_projector_algebra() {
        let d = two_term_decomposition(&GateSpec::Parity { d1: 3, d2: 4 }).unwrap();
        let (a1, a2, b1, b2) = d.factors();
        assert!(a1.matmul(a1).max_abs_diff(a1) < 1e-12);
        assert!(b1.matmul(b1).max_abs_diff(b1) < 1e-12);
        assert!(a1.matmul(b1).max_abs() < 1e-12);
        let id1 = DenseMatrix::identity(3);
        let id2 = DenseMatrix::identity(4);
        assert!(a2.matmul(a2).max_abs_diff(&id2) < 1e-12);
        assert!(b2.matmul(b2).max_abs_diff(&id2) < 1e-12);
        assert!(a1.add(b1).max_abs_diff(&id1) < 1e-12);
    }

    #[test]
    fn parity_concurrence_cases() {
        assert!((parity_gate_concurrence_closed(2, 2) - 1.0).abs() < 1e-15);
        assert!((parity_gate_concurrence_closed(2, 3) - 8f64.sqrt() / 3.0).abs() < 1e-15);
        assert!((parity_gate_concurrence_closed(3, 2) - 8f64.sqrt() / 3.0).abs() < 1e-15);
        assert!((parity_gate_concurrence_closed(3, 3) - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn cnnot_reduces_to_cnot() {
        let u = cnnot_gate(1, 1).unwrap();
        let expected = DenseMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        assert_eq!(u.op().max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn cnnot_flips_exactly_one_pair() {
        let u = cnnot_gate(2, 1).unwrap();
        let mut moved = Vec::new();
        for col in 0..8 {
            for row in 0..8 {
                if u.op()[(row, col)].norm() > 0.5 && row != col {
                    moved.push((row, col));
                }
            }
        }
        assert_eq!(moved, vec![(7, 6), (6, 7)]);
    }

    #[test]
    fn cnnot_is_involutive_and_matches_projector_form() {
        for n in 1..=4u32 {
            for k in 1..=n {
                let u = cnnot_gate(n, k).unwrap();
                let dim = u.bipartition().dim();
                assert!(u.op().matmul(u.op()).max_abs_diff(&DenseMatrix::identity(dim)) < 1e-12);
                let d = two_term_decomposition(&GateSpec::Cnnot { n, k }).unwrap();
                assert!(d.materialize().max_abs_diff(u.op()) < 1e-12);
            }
        }
    }

    #[test]
    fn cnnot_concurrence_closed_form() {
        assert!((cnnot_concurrence_closed(1, 1) - 1.0).abs() < 1e-15);
        assert!((cnnot_concurrence_closed(2, 1) - 3f64.sqrt() / 2.0).abs() < 1e-15);
        for n in 1..=4u32 {
            for k in 1..=n {
                assert_eq!(
                    cnnot_concurrence_closed(n, k),
                    cnnot_concurrence_closed(n, n + 1 - k)
                );
            }
        }
    }

    #[test]
    fn zchain_examples() {
        let id = zchain_gate(0.0, 3, 1).unwrap();
        assert_eq!(id.op().max_abs_diff(&DenseMatrix::identity(8)), 0.0);

        let u = zchain_gate(std::f64::consts::FRAC_PI_4, 2, 1).unwrap();
        let phase = std::f64::consts::FRAC_PI_4;
        let expected = DenseMatrix::from_diag(&[
            Complex64::cis(-phase),
            Complex64::cis(phase),
            Complex64::cis(phase),
            Complex64::cis(-phase),
        ]);
        assert!(u.op().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn zchain_is_unitary_and_matches_two_term_form() {
        for n in 2..=5u32 {
            let theta = 0.21 * n as f64;
            for k in 1..n {
                let gate = zchain_gate(theta, n, k).unwrap();
                assert!(check_unitary(gate.op(), UNITARY_TOL).is_unitary());
                let d = two_term_decomposition(&GateSpec::Zchain { theta, n, k }).unwrap();
                assert!(d.materialize().max_abs_diff(gate.op()) < 1e-12);
            }
        }
    }

    #[test]
    fn zchain_concurrence_is_split_independent() {
        let theta = 0.7;
        let expected = zchain_concurrence_closed(theta);
        assert!((expected - (2.0f64 * theta).sin().abs()) < 1e-15);
        for n in [3u32, 4] {
            for k in 1..n {
                let gate = zchain_gate(theta, n, k).unwrap();
                let spec = schmidt_spectrum(&gate).unwrap();
                let numeric = concurrence_from_spectrum(&spec).unwrap();
                assert!((numeric - expected).abs() < 1e-10, "n {n} k {k}");
            }
        }
        assert_eq!(zchain_concurrence_closed(0.0), 0.0);
        assert!((zchain_concurrence_closed(std::f64::consts::FRAC_PI_4) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn swap_gate_properties() {
        let s = swap_gate(2).unwrap();
        let spec = schmidt_spectrum(&s).unwrap();
        assert!((linear_entropy(&spec) - 0.75).abs() < 1e-12);
        assert_eq!(s.op().matmul(s.op()).max_abs_diff(&DenseMatrix::identity(4)), 0.0);
        assert!(entangling_power_direct(&s, CapPolicy::Enforce).unwrap().abs() < 1e-12);
    }

    #[test]
    fn cnot_two_term_decomposition_is_the_projector_split() {
        let d = two_term_decomposition(&GateSpec::Cnot).unwrap();
        assert_eq!(d.mu(), c(1.0, 0.0));
        assert_eq!(d.nu(), c(-2.0, 0.0));
        let (a1, a2, b1, b2) = d.factors();
        assert_eq!(a1.max_abs_diff(&DenseMatrix::identity(2)), 0.0);
        assert_eq!(a2.max_abs_diff(&DenseMatrix::identity(2)), 0.0);
        assert_eq!(b1.max_abs_diff(&pauli_projector(Axis::Z)), 0.0);
        assert_eq!(b2.max_abs_diff(&pauli_projector(Axis::X)), 0.0);
    }

    #[test]
    fn cnot_matches_its_local_phase_equivalent() {
        // exp(-i π/4 σz⊗σx) has the same concurrence as CNOT.
        let zx = kron(&sigma_z(), &sigma_x()).unwrap();
        let theta = std::f64::consts::FRAC_PI_4;
        // σz⊗σx squares to the identity, so the exponential is
        // cos θ I - i sin θ (σz⊗σx).
        let mat = DenseMatrix::identity(4)
            .scale(c(theta.cos(), 0.0))
            .add(&zx.scale(c(0.0, -theta.sin())));
        let u = OperatorState::new(mat, Bipartition::new(2, 2).unwrap()).unwrap();
        let spec = schmidt_spectrum(&u).unwrap();
        assert!((concurrence_from_spectrum(&spec).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(GateSpec::Cnnot { n: 2, k: 3 }.validate().is_err());
        assert!(GateSpec::Cnnot { n: 0, k: 0 }.validate().is_err());
        assert!(GateSpec::Spin { theta: f64::NAN, two_j: 1 }.validate().is_err());
        assert!(GateSpec::Spin { theta: 0.0, two_j: 0 }.validate().is_err());
        assert!(GateSpec::Zchain { theta: 0.0, n: 2, k: 2 }.validate().is_err());
        assert!(GateSpec::Parity { d1: 1, d2: 2 }.validate().is_err());
        assert!(GateSpec::Swap { d: 1 }.validate().is_err());
        assert!(two_term_decomposition(&GateSpec::Swap { d: 2 }).is_err());
    }

    #[test]
    fn orthogonality_of_spin_factors() {
        // <cos(2Jzθ), sin(2Jzθ)> = 0: the odd sum over symmetric m cancels.
        let d = two_term_decomposition(&GateSpec::Spin { theta: 0.83, two_j: 5 }).unwrap();
        let (_, a2, _, b2) = d.factors();
        assert!(hs_inner(a2, b2).unwrap().norm() < 1e-12);
    }
}
