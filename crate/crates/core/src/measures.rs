//! Entanglement functionals for bipartite operators: linear entropy by two
//! independent routes, exchange entropy, entangling power by three routes,
//! and the concurrence of two-term operators by three routes.
//!
//! The fold-4 routes work on the doubled space `H_{d1} ⊗ H_{d2} ⊗ H_{d1} ⊗
//! H_{d2}` and evaluate permutation-operator traces of `U ⊗ U`; they are kept
//! at desk scale by a dimension cap. The spectrum routes go through the
//! realigned operator's singular values and scale further.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hs::{hs_inner, hs_norm_sqr, schmidt_spectrum, OperatorState, SchmidtSpectrum};
use crate::sampling::{haar_state, RandomStream};
use crate::tensor::{
    kron, swap_operator, symmetric_projector, trace_of_product, Bipartition, DenseMatrix, Keep,
    Sign, SubsystemLayout,
};

/// Fold-4 constructions refuse systems larger than this unless overridden;
/// the doubled space is `dim²`-dimensional.
pub const FOLD4_DIM_CAP: usize = 16;

/// Proportional factor pairs are detected below this threshold on
/// `‖A‖²‖B‖² - |<A,B>|²`, which avoids NaN from tiny negative round-off.
const PROPORTIONALITY_CLAMP: f64 = 1e-18;

/// Whether a fold-4 construction may exceed [`FOLD4_DIM_CAP`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapPolicy {
    Enforce,
    Override,
}

fn fold4_guard(bp: Bipartition, cap: CapPolicy) -> Result<SubsystemLayout> {
    if cap == CapPolicy::Enforce && bp.dim() > FOLD4_DIM_CAP {
        return Err(Error::SizeCapExceeded { dim: bp.dim(), cap: FOLD4_DIM_CAP });
    }
    SubsystemLayout::new(vec![bp.d1(), bp.d2(), bp.d1(), bp.d2()])
}

/// `tr(U⊗U · mid · (U⊗U)† · t13)`, the real part.
fn fold4_trace(u: &OperatorState, mid: &DenseMatrix, t13: &DenseMatrix) -> Result<f64> {
    let u2 = kron(u.op(), u.op())?;
    let product = u2.matmul(mid).matmul(&u2.adjoint());
    Ok(trace_of_product(&product, t13).re)
}

/// Linear entropy `1 - Σ λ_k⁴` of an operator Schmidt spectrum.
pub fn linear_entropy(spec: &SchmidtSpectrum) -> f64 {
    let purity: f64 = spec.lambdas().iter().map(|l| l.powi(4)).sum();
    let bound = 1.0 - 1.0 / spec.lambdas().len() as f64;
    (1.0 - purity).clamp(0.0, bound)
}

/// Linear entropy through the 4-fold permutation trace,
/// `1 - tr(U⊗² T13 U†⊗² T13) / (d1² d2²)`; independent of the spectrum route.
pub fn linear_entropy_fold4(u: &OperatorState, cap: CapPolicy) -> Result<f64> {
    let layout = fold4_guard(u.bipartition(), cap)?;
    let t13 = swap_operator(&layout, 0, 2)?;
    let dim = u.bipartition().dim() as f64;
    Ok(1.0 - fold4_trace(u, &t13, &t13)? / (dim * dim))
}

/// Exchange entropy `1 - tr(U⊗² T24 U†⊗² T13) / (d1² d2²)`. For `d1 = d2`
/// it equals the linear entropy of `U · SWAP`.
pub fn exchange_entropy(u: &OperatorState, cap: CapPolicy) -> Result<f64> {
    let layout = fold4_guard(u.bipartition(), cap)?;
    let t13 = swap_operator(&layout, 0, 2)?;
    let t24 = swap_operator(&layout, 1, 3)?;
    let dim = u.bipartition().dim() as f64;
    Ok(1.0 - fold4_trace(u, &t24, &t13)? / (dim * dim))
}

/// Entangling power over Haar-uniform product states, evaluated directly as
/// `1 - 4 tr(U⊗² P+13 P+24 U†⊗² T13) / (d1(d1+1) d2(d2+1))`.
pub fn entangling_power_direct(u: &OperatorState, cap: CapPolicy) -> Result<f64> {
    let layout = fold4_guard(u.bipartition(), cap)?;
    let t13 = swap_operator(&layout, 0, 2)?;
    let p13 = symmetric_projector(&layout, 0, 2, Sign::Plus)?;
    let p24 = symmetric_projector(&layout, 1, 3, Sign::Plus)?;
    let (d1, d2) = (u.bipartition().d1() as f64, u.bipartition().d2() as f64);
    let prefactor = 4.0 / (d1 * (d1 + 1.0) * d2 * (d2 + 1.0));
    Ok(1.0 - prefactor * fold4_trace(u, &p13.matmul(&p24), &t13)?)
}

/// Entangling power from the two entropies:
/// `d1 d2 / ((d1+1)(d2+1)) · [E + Ẽ + 1/(d1 d2) - 1]`.
pub fn entangling_power_via_relation(e: f64, e_tilde: f64, bp: Bipartition) -> f64 {
    let (d1, d2) = (bp.d1() as f64, bp.d2() as f64);
    d1 * d2 / ((d1 + 1.0) * (d2 + 1.0)) * (e + e_tilde + 1.0 / (d1 * d2) - 1.0)
}

/// Linear entropy of a pure bipartite state, `1 - tr(ρ1²)`.
pub fn state_linear_entropy(psi: &[Complex64], bp: Bipartition) -> Result<f64> {
    if psi.len() != bp.dim() {
        return Err(Error::ShapeMismatch(format!(
            "state of length {} for bipartition {bp}",
            psi.len()
        )));
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm, tol: 1e-10 });
    }
    Ok(reduced_purity_entropy(psi, bp))
}

/// `1 - tr(ρ1²) / tr(ρ1)²` — scale-invariant form shared by the Monte-Carlo
/// estimator, clamped at zero from below.
fn reduced_purity_entropy(psi: &[Complex64], bp: Bipartition) -> f64 {
    let (d1, d2) = (bp.d1(), bp.d2());
    let mut purity = 0.0;
    let mut trace = 0.0;
    for i in 0..d1 {
        for j in 0..d1 {
            let mut entry = Complex64::new(0.0, 0.0);
            for k in 0..d2 {
                entry += psi[i * d2 + k] * psi[j * d2 + k].conj();
            }
            purity += entry.norm_sqr();
            if i == j {
                trace += entry.re;
            }
        }
    }
    (1.0 - purity / (trace * trace)).max(0.0)
}

/// Monte-Carlo estimate with its sampling pedigree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
}

/// Monte-Carlo entangling power: mean linear entropy of `U` applied to
/// Haar-random product states.
///
/// Sample `i` draws its factors from substreams `2i` and `2i+1` of the seeded
/// generator, so the estimate is a pure function of `(seed, n)` no matter how
/// the samples are scheduled.
pub fn entangling_power_mc(u: &OperatorState, n: u64, seed: u64) -> Result<McEstimate> {
    if n < 2 {
        return Err(Error::InvalidParameter("mc estimator needs n >= 2 samples".into()));
    }
    let bp = u.bipartition();
    let stream = RandomStream::new(seed);
    let mut samples = Vec::with_capacity(n as usize);
    let mut product = vec![Complex64::new(0.0, 0.0); bp.dim()];
    for i in 0..n {
        let phi1 = haar_state(bp.d1(), stream.substream(2 * i));
        let phi2 = haar_state(bp.d2(), stream.substream(2 * i + 1));
        for (a, za) in phi1.iter().enumerate() {
            for (b, zb) in phi2.iter().enumerate() {
                product[a * bp.d2() + b] = za * zb;
            }
        }
        let evolved = u.op().mul_vec(&product);
        samples.push(reduced_purity_entropy(&evolved, bp));
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0);
    Ok(McEstimate { mean, std_error: (var / n as f64).sqrt(), n, seed })
}

/// Symbolic form of `μ A1⊗A2 + ν B1⊗B2`.
#[derive(Debug, Clone)]
pub struct TwoTermDecomposition {
    mu: Complex64,
    nu: Complex64,
    a1: DenseMatrix,
    a2: DenseMatrix,
    b1: DenseMatrix,
    b2: DenseMatrix,
}

impl TwoTermDecomposition {
    pub fn new(
        mu: Complex64,
        a1: DenseMatrix,
        a2: DenseMatrix,
        nu: Complex64,
        b1: DenseMatrix,
        b2: DenseMatrix,
    ) -> Result<Self> {
        if !a1.is_square() || !a2.is_square() || !b1.is_square() || !b2.is_square() {
            return Err(Error::ShapeMismatch("two-term factors must be square".into()));
        }
        if a1.rows() != b1.rows() || a2.rows() != b2.rows() {
            return Err(Error::ShapeMismatch(
                "two-term factors must agree per side".into(),
            ));
        }
        // Ensures materialize() cannot overflow later.
        Bipartition::new(a1.rows(), a2.rows())?;
        kron(&a1, &a2)?;
        Ok(Self { mu, nu, a1, a2, b1, b2 })
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn factors(&self) -> (&DenseMatrix, &DenseMatrix, &DenseMatrix, &DenseMatrix) {
        (&self.a1, &self.a2, &self.b1, &self.b2)
    }

    pub fn bipartition(&self) -> Bipartition {
        Bipartition::new(self.a1.rows(), self.a2.rows()).expect("validated in constructor")
    }

    /// The dense operator `μ A1⊗A2 + ν B1⊗B2`.
    pub fn materialize(&self) -> DenseMatrix {
        let a = kron(&self.a1, &self.a2).expect("validated in constructor");
        let b = kron(&self.b1, &self.b2).expect("validated in constructor");
        a.scale(self.mu).add(&b.scale(self.nu))
    }

    /// Squared HS norm of the materialized operator, from the Gram expansion
    /// of the two terms.
    pub fn hs_norm_sqr(&self) -> Result<f64> {
        let na_sqr = hs_norm_sqr(&self.a1) * hs_norm_sqr(&self.a2);
        let nb_sqr = hs_norm_sqr(&self.b1) * hs_norm_sqr(&self.b2);
        let overlap = hs_inner(&self.a1, &self.b1)? * hs_inner(&self.a2, &self.b2)?;
        let cross = (self.mu.conj() * self.nu * overlap).re;
        Ok(self.mu.norm_sqr() * na_sqr + self.nu.norm_sqr() * nb_sqr + 2.0 * cross)
    }
}

/// Per-side discriminant `‖A‖²‖B‖² - |<A,B>|²`, clamped to zero when the
/// factors are (numerically) proportional.
fn side_discriminant(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    let overlap = hs_inner(a, b)?;
    let disc = hs_norm_sqr(a) * hs_norm_sqr(b) - overlap.norm_sqr();
    Ok(if disc < PROPORTIONALITY_CLAMP { 0.0 } else { disc })
}

/// Concurrence of a two-term operator,
/// `2 |μν| √(‖A1‖²‖B1‖² - |<A1,B1>|²) √(‖A2‖²‖B2‖² - |<A2,B2>|²) / ‖U‖²`.
///
/// Dividing by the computed `‖U‖²` instead of `d1 d2` keeps the functional
/// defined for any nonzero two-term operator; on unitaries they coincide.
/// Degenerate decompositions (a zero factor or a proportional pair) evaluate
/// continuously to zero.
pub fn concurrence_two_term(d: &TwoTermDecomposition) -> Result<f64> {
    let hs_sqr = d.hs_norm_sqr()?;
    let scale = d.mu.norm_sqr() * hs_norm_sqr(&d.a1) * hs_norm_sqr(&d.a2)
        + d.nu.norm_sqr() * hs_norm_sqr(&d.b1) * hs_norm_sqr(&d.b2);
    if scale == 0.0 || hs_sqr <= 1e-14 * scale {
        return Err(Error::ZeroOperator);
    }
    let disc1 = side_discriminant(&d.a1, &d.b1)?;
    let disc2 = side_discriminant(&d.a2, &d.b2)?;
    let c = 2.0 * (d.mu * d.nu).norm() * (disc1 * disc2).sqrt() / hs_sqr;
    Ok(c.clamp(0.0, 1.0))
}

/// A two-term operator state rewritten in the orthogonal two-qubit basis.
#[derive(Debug, Clone)]
pub struct TwoQubitReduction {
    pub mu_tilde: Complex64,
    pub nu_tilde: Complex64,
    pub m1: f64,
    pub m2: f64,
    /// `amplitudes[i][j]` multiplies `|i>_1 ⊗ |j>_2`; `amplitudes[1][1]` is
    /// zero by construction.
    pub amplitudes: [[Complex64; 2]; 2],
}

const REDUCTION_MIN_M: f64 = 1e-9;

/// Expands the normalized operator in the Gram-Schmidt basis built from the
/// factor pairs: `|0>_1 = |Â1>`, `|1>_1 ∝ |B̂1> - <Â1,B̂1>|Â1>`, and on side
/// two `|0>_2 = |B̂2>`, `|1>_2 ∝ |Â2> - <B̂2,Â2>|B̂2>`.
///
/// Errors on a degenerate decomposition (proportional or zero factors),
/// where the basis is undefined and the concurrence is analytically zero.
pub fn reduce_to_two_qubit(d: &TwoTermDecomposition) -> Result<TwoQubitReduction> {
    let (a1, a2, b1, b2) = d.factors();
    let norms_sqr = [hs_norm_sqr(a1), hs_norm_sqr(b1), hs_norm_sqr(a2), hs_norm_sqr(b2)];
    if norms_sqr[0] == 0.0 || norms_sqr[1] == 0.0 {
        return Err(Error::DegenerateDecomposition { side: 1 });
    }
    if norms_sqr[2] == 0.0 || norms_sqr[3] == 0.0 {
        return Err(Error::DegenerateDecomposition { side: 2 });
    }
    // Inner products between normalized operators; the squared magnitudes
    // are formed as single ratios so a proportional pair lands on exactly 1.
    let overlap1 = hs_inner(a1, b1)?;
    let overlap2 = hs_inner(a2, b2)?;
    let g1 = overlap1 / (norms_sqr[0] * norms_sqr[1]).sqrt();
    let g2 = overlap2 / (norms_sqr[2] * norms_sqr[3]).sqrt();
    let m1 = (1.0 - overlap1.norm_sqr() / (norms_sqr[0] * norms_sqr[1])).max(0.0).sqrt();
    let m2 = (1.0 - overlap2.norm_sqr() / (norms_sqr[2] * norms_sqr[3])).max(0.0).sqrt();
    if m1 <= REDUCTION_MIN_M {
        return Err(Error::DegenerateDecomposition { side: 1 });
    }
    if m2 <= REDUCTION_MIN_M {
        return Err(Error::DegenerateDecomposition { side: 2 });
    }

    let hs_sqr = d.hs_norm_sqr()?;
    if hs_sqr <= 0.0 {
        return Err(Error::ZeroOperator);
    }
    let hs = hs_sqr.sqrt();
    let mu_tilde = d.mu() * (norms_sqr[0] * norms_sqr[2]).sqrt() / hs;
    let nu_tilde = d.nu() * (norms_sqr[1] * norms_sqr[3]).sqrt() / hs;

    let zero = Complex64::new(0.0, 0.0);
    let amplitudes = [
        [mu_tilde * g2.conj() + nu_tilde * g1, mu_tilde * m2],
        [nu_tilde * m1, zero],
    ];
    Ok(TwoQubitReduction { mu_tilde, nu_tilde, m1, m2, amplitudes })
}

impl TwoQubitReduction {
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().flatten().map(|a| a.norm_sqr()).sum()
    }
}

/// Concurrence of a two-qubit pure state, `2 |a00 a11 - a01 a10|`.
pub fn pure_state_concurrence(r: &TwoQubitReduction) -> f64 {
    let a = &r.amplitudes;
    2.0 * (a[0][0] * a[1][1] - a[0][1] * a[1][0]).norm()
}

/// Concurrence read off the Schmidt spectrum, `2 λ1 λ2`; defined only on
/// operators of Schmidt rank at most two.
pub fn concurrence_from_spectrum(spec: &SchmidtSpectrum) -> Result<f64> {
    let rank = spec.rank();
    if rank > 2 {
        return Err(Error::RankAboveTwo { rank });
    }
    let l = spec.lambdas();
    let second = l.get(1).copied().unwrap_or(0.0);
    Ok((2.0 * l[0] * second).clamp(0.0, 1.0))
}

/// All measures of one operator in one place. Fold-4 fields are absent when
/// the size cap ruled those routes out.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub e: f64,
    pub e_tilde: Option<f64>,
    pub ep: Option<f64>,
    pub concurrence: Option<f64>,
    pub schmidt_rank: usize,
}

/// Builds a [`MeasureReport`]: linear entropy from the spectrum route,
/// exchange entropy from the fold-4 route, entangling power from the relation
/// route, concurrence from the spectrum route when the rank permits.
///
/// When a decomposition is supplied it must materialize to the operator, and
/// its closed-form concurrence is cross-checked against the spectrum route.
pub fn measure_report(
    u: &OperatorState,
    decomposition: Option<&TwoTermDecomposition>,
    cap: CapPolicy,
) -> Result<MeasureReport> {
    let spec = schmidt_spectrum(u)?;
    let e = linear_entropy(&spec);
    let schmidt_rank = spec.rank();

    let (e_tilde, ep) = match exchange_entropy(u, cap) {
        Ok(et) => (Some(et), Some(entangling_power_via_relation(e, et, u.bipartition()))),
        Err(Error::SizeCapExceeded { .. }) => (None, None),
        Err(err) => return Err(err),
    };

    let concurrence = if schmidt_rank <= 2 {
        Some(concurrence_from_spectrum(&spec)?)
    } else {
        None
    };

    if let Some(d) = decomposition {
        let tol = 1e-12 * (1.0 + u.op().max_abs());
        if d.materialize().max_abs_diff(u.op()) > tol {
            return Err(Error::InvalidParameter(
                "decomposition does not materialize to the operator".into(),
            ));
        }
        let closed = concurrence_two_term(d)?;
        if let Some(c) = concurrence {
            if (c - closed).abs() > 1e-8 {
                return Err(Error::InvalidParameter(format!(
                    "two-term concurrence {closed} disagrees with spectrum route {c}"
                )));
            }
        }
    }

    Ok(MeasureReport { e, e_tilde, ep, concurrence, schmidt_rank })
}

/// Linear entropy of `U · SWAP`; only defined for `d1 = d2`, where it equals
/// the exchange entropy.
pub fn linear_entropy_of_swapped(u: &OperatorState) -> Result<f64> {
    let bp = u.bipartition();
    if bp.d1() != bp.d2() {
        return Err(Error::InvalidParameter(
            "U * SWAP needs equal subsystem dimensions".into(),
        ));
    }
    let layout = SubsystemLayout::new(vec![bp.d1(), bp.d2()])?;
    let swap = swap_operator(&layout, 0, 1)?;
    let swapped = u.compose(&swap)?;
    Ok(linear_entropy(&schmidt_spectrum(&swapped)?))
}

/// Reduced density matrix after applying the operator to a product state;
/// exposed for the estimator's tests.
pub fn reduced_state(u: &OperatorState, psi: &[Complex64], keep: Keep) -> Result<DenseMatrix> {
    let bp = u.bipartition();
    let evolved = u.op().mul_vec(psi);
    let rho = DenseMatrix::from_fn(bp.dim(), bp.dim(), |i, j| evolved[i] * evolved[j].conj());
    crate::tensor::partial_trace(&rho, bp, keep)
}
