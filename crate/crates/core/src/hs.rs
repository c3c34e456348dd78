//! Hilbert-Schmidt geometry: the operator inner product, operator kets, the
//! realignment of a bipartite operator into a state in HS space, and the
//! operator Schmidt spectrum read off its singular values.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{Bipartition, DenseMatrix};

/// Singular values below this are treated as exactly zero; SVD noise floor
/// at desk scale.
pub const SPECTRUM_CLAMP: f64 = 1e-12;

/// Hilbert-Schmidt inner product `tr(a† b)`; conjugate-linear in `a`.
pub fn hs_inner(a: &DenseMatrix, b: &DenseMatrix) -> Result<Complex64> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::ShapeMismatch(format!(
            "hs_inner on {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &y) in a.entries().iter().zip(b.entries()) {
        acc += x.conj() * y;
    }
    Ok(acc)
}

/// Squared Hilbert-Schmidt norm `tr(a† a)` as a plain entry sum. Preferred
/// over squaring [`hs_norm`] wherever exact cancellation matters (the
/// Cauchy-Schwarz discriminants of the concurrence).
pub fn hs_norm_sqr(a: &DenseMatrix) -> f64 {
    a.entries().iter().map(|z| z.norm_sqr()).sum()
}

/// Hilbert-Schmidt norm `sqrt(tr(a† a))`.
pub fn hs_norm(a: &DenseMatrix) -> f64 {
    hs_norm_sqr(a).sqrt()
}

/// A bipartite operator viewed as a vector in Hilbert-Schmidt space,
/// with its norm cached.
#[derive(Debug, Clone)]
pub struct OperatorState {
    op: DenseMatrix,
    bp: Bipartition,
    hs_norm: f64,
}

impl OperatorState {
    pub fn new(op: DenseMatrix, bp: Bipartition) -> Result<Self> {
        if !op.is_square() || op.rows() != bp.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} operator for bipartition {bp}",
                op.rows(),
                op.cols()
            )));
        }
        let hs_norm = hs_norm(&op);
        if hs_norm == 0.0 {
            return Err(Error::ZeroOperator);
        }
        Ok(Self { op, bp, hs_norm })
    }

    pub fn op(&self) -> &DenseMatrix {
        &self.op
    }

    pub fn bipartition(&self) -> Bipartition {
        self.bp
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_norm
    }

    /// Operator state of `self.op * rhs` on the same bipartition.
    pub fn compose(&self, rhs: &DenseMatrix) -> Result<Self> {
        Self::new(self.op.matmul(rhs), self.bp)
    }
}

/// Reshapes the operator into the `d1² x d2²` matrix whose row indexes the
/// first-factor index pair and whose column indexes the second-factor pair:
/// `M[i1*d1 + j1, i2*d2 + j2] = U[(i1,i2),(j1,j2)]`.
///
/// This is an entry permutation, so the Frobenius norm equals the HS norm of
/// the operator, and a product operator realigns to a rank-1 matrix.
pub fn realign(u: &OperatorState) -> DenseMatrix {
    let (d1, d2) = (u.bipartition().d1(), u.bipartition().d2());
    let op = u.op();
    let mut out = DenseMatrix::zeros(d1 * d1, d2 * d2);
    for i1 in 0..d1 {
        for j1 in 0..d1 {
            for i2 in 0..d2 {
                for j2 in 0..d2 {
                    out[(i1 * d1 + j1, i2 * d2 + j2)] = op[(i1 * d2 + i2, j1 * d2 + j2)];
                }
            }
        }
    }
    out
}

/// Normalized operator Schmidt coefficients, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    lambdas: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Wraps raw coefficients: sorts descending, clamps the noise floor,
    /// and checks normalization.
    pub fn new(mut lambdas: Vec<f64>) -> Result<Self> {
        for l in &mut lambdas {
            if *l < SPECTRUM_CLAMP {
                *l = 0.0;
            }
        }
        lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        let sum_sq: f64 = lambdas.iter().map(|l| l * l).sum();
        if (sum_sq - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "Schmidt coefficients have squared sum {sum_sq}"
            )));
        }
        Ok(Self { lambdas })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Number of nonzero coefficients after clamping.
    pub fn rank(&self) -> usize {
        self.lambdas.iter().filter(|&&l| l > 0.0).count()
    }
}

/// Operator Schmidt spectrum: singular values of the realigned operator,
/// divided by the operator's HS norm.
///
/// Dividing by the computed norm rather than `sqrt(d1 d2)` keeps the spectrum
/// valid for non-unitary operators; the two coincide on unitaries.
pub fn schmidt_spectrum(u: &OperatorState) -> Result<SchmidtSpectrum> {
    let m = realign(u);
    let mut values = singular_values(&m);
    for v in &mut values {
        *v /= u.hs_norm();
    }
    SchmidtSpectrum::new(values)
}

/// Singular values of a dense complex matrix, descending. Thin wrapper over
/// the nalgebra SVD.
pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    let na = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)]);
    let svd = na.svd(false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::kron;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> DenseMatrix {
        DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    fn sigma_y() -> DenseMatrix {
        DenseMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap()
    }

    fn sigma_z() -> DenseMatrix {
        DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
    }

    fn cnot() -> DenseMatrix {
        DenseMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(hs_inner(&sigma_z(), &sigma_z()).unwrap(), c(2.0, 0.0));
        assert_eq!(hs_inner(&sigma_x(), &sigma_z()).unwrap(), c(0.0, 0.0));
        let pz = DenseMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(hs_inner(&DenseMatrix::identity(2), &pz).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let a = DenseMatrix::new(2, 2, vec![c(1.0, 2.0), c(0.5, -1.0), c(0.0, 0.3), c(2.0, 0.0)])
            .unwrap();
        let b = DenseMatrix::new(2, 2, vec![c(-1.0, 0.2), c(1.5, 1.0), c(0.7, 0.0), c(0.0, -2.0)])
            .unwrap();
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn norm_examples() {
        assert!((hs_norm(&DenseMatrix::identity(5)) - 5f64.sqrt()).abs() < 1e-15);
        assert!((hs_norm(&sigma_y()) - 2f64.sqrt()).abs() < 1e-15);
        assert!((hs_norm(&cnot()) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn realign_of_product_operator_is_outer_product() {
        let a = DenseMatrix::new(2, 2, vec![c(0.3, 0.1), c(-1.0, 0.0), c(0.0, 2.0), c(1.0, -0.5)])
            .unwrap();
        let b = DenseMatrix::new(2, 2, vec![c(1.0, 1.0), c(0.2, 0.0), c(0.0, -0.7), c(0.4, 0.0)])
            .unwrap();
        let bp = Bipartition::new(2, 2).unwrap();
        let u = OperatorState::new(kron(&a, &b).unwrap(), bp).unwrap();
        let m = realign(&u);
        // M[r, c] = vec(a)[r] * vec(b)[c] under row-major vectorization.
        for r in 0..4 {
            for col in 0..4 {
                let expected = a[(r / 2, r % 2)] * b[(col / 2, col % 2)];
                assert!((m[(r, col)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn realign_of_cnot_has_two_equal_singular_values() {
        // Oracle: realign CNOT by hand from the index formula and feed the
        // 16-entry matrix straight to the SVD.
        let u = cnot();
        let mut by_hand = DenseMatrix::zeros(4, 4);
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        by_hand[(i1 * 2 + j1, i2 * 2 + j2)] = u[(i1 * 2 + i2, j1 * 2 + j2)];
                    }
                }
            }
        }
        let values = singular_values(&by_hand);
        let expected = [2f64.sqrt(), 2f64.sqrt(), 0.0, 0.0];
        for (got, want) in values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "got {values:?}");
        }

        let bp = Bipartition::new(2, 2).unwrap();
        let state = OperatorState::new(u, bp).unwrap();
        assert!(realign(&state).max_abs_diff(&by_hand) == 0.0);
    }

    #[test]
    fn realign_preserves_frobenius_norm() {
        let bp = Bipartition::new(2, 3).unwrap();
        for seed in 0..20 {
            let u = crate::sampling::haar_unitary(6, crate::sampling::RandomStream::new(seed));
            let state = OperatorState::new(u, bp).unwrap();
            let m = realign(&state);
            assert!((hs_norm(&m) - state.hs_norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_of_product_operator_is_pure() {
        let bp = Bipartition::new(2, 2).unwrap();
        let u = OperatorState::new(DenseMatrix::identity(4), bp).unwrap();
        let spec = schmidt_spectrum(&u).unwrap();
        assert_eq!(spec.lambdas(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(spec.rank(), 1);
    }

    #[test]
    fn spectrum_of_cnot() {
        let bp = Bipartition::new(2, 2).unwrap();
        let u = OperatorState::new(cnot(), bp).unwrap();
        let spec = schmidt_spectrum(&u).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [inv_sqrt2, inv_sqrt2, 0.0, 0.0];
        for (got, want) in spec.lambdas().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(spec.rank(), 2);
    }

    #[test]
    fn spectrum_of_swap_is_flat() {
        let layout = crate::tensor::SubsystemLayout::new(vec![2, 2]).unwrap();
        let swap = crate::tensor::swap_operator(&layout, 0, 1).unwrap();
        let bp = Bipartition::new(2, 2).unwrap();
        let spec = schmidt_spectrum(&OperatorState::new(swap, bp).unwrap()).unwrap();
        for &l in spec.lambdas() {
            assert!((l - 0.5).abs() < 1e-12);
        }
        assert_eq!(spec.rank(), 4);
    }

    #[test]
    fn zero_operator_is_rejected() {
        let bp = Bipartition::new(2, 2).unwrap();
        assert!(matches!(
            OperatorState::new(DenseMatrix::zeros(4, 4), bp),
            Err(Error::ZeroOperator)
        ));
    }
}
