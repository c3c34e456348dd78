//! Shared fixtures for the measure benchmarks.

use entop::hs::OperatorState;
use entop::sampling::{haar_unitary, RandomStream};
use entop::tensor::Bipartition;

/// Haar-random operator state on `d1 x d2` from a fixed stream.
pub fn haar_operator(d1: usize, d2: usize, seed: u64) -> OperatorState {
    let bp = Bipartition::new(d1, d2).expect("valid bipartition");
    OperatorState::new(haar_unitary(bp.dim(), RandomStream::new(seed)), bp)
        .expect("haar unitary is nonzero")
}
