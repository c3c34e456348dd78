//! Deterministic, seedable sampling of Haar-random pure states and unitaries.
//!
//! Randomness is counter-addressed: a [`RandomStream`] names a substream of a
//! keyed generator, and every sample is a pure function of `(seed, counter)`.
//! This is what makes the Monte-Carlo estimator bit-reproducible regardless
//! of execution order.
//!
//! The exact pipeline is part of the reproducibility contract: ChaCha8 keyed
//! by the seed with the counter as the stream id, uniform doubles from the
//! top 53 bits of each 64-bit draw, and Gaussian variates via the Box-Muller
//! transform over consecutive uniform pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tensor::DenseMatrix;

/// Handle for one substream of the keyed generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomStream {
    seed: u64,
    counter: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// The same key, addressing substream `counter`.
    pub fn substream(self, counter: u64) -> Self {
        Self { seed: self.seed, counter }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.counter);
        rng
    }
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard-normal pair via Box-Muller.
fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // 1 - u lies in (0, 1], keeping the log finite.
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    (r * angle.cos(), r * angle.sin())
}

fn complex_gaussians(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let (re, im) = gaussian_pair(rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// Haar-random pure state of dimension `d`: complex Gaussian components,
/// normalized. Unitary invariance of the Gaussian makes the result
/// Fubini-Study uniform.
pub fn haar_state(d: usize, stream: RandomStream) -> Vec<Complex64> {
    assert!(d >= 1, "state dimension must be positive");
    let mut rng = stream.rng();
    let mut v = complex_gaussians(d, &mut rng);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Haar-random unitary of dimension `d`: QR of a complex Gaussian matrix with
/// the R-diagonal phases folded back into Q so the distribution is Haar.
pub fn haar_unitary(d: usize, stream: RandomStream) -> DenseMatrix {
    assert!(d >= 1, "unitary dimension must be positive");
    let mut rng = stream.rng();
    let entries = complex_gaussians(d * d, &mut rng);
    // Row-major fill to keep the draw order part of the contract.
    let gaussian = DMatrix::from_fn(d, d, |i, j| entries[i * d + j]);
    let qr = gaussian.qr();
    let r = qr.r();
    let phases: Vec<Complex64> = (0..d)
        .map(|k| {
            let rk = r[(k, k)];
            if rk.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                rk / rk.norm()
            }
        })
        .collect();
    let q = qr.q();
    DenseMatrix::from_fn(d, d, |i, j| q[(i, j)] * phases[j])
}
