//! Entanglement of unitary operators on bipartite quantum systems.
//!
//! An operator on `H_{d1} ⊗ H_{d2}` is itself a vector in the bipartite
//! Hilbert-Schmidt space, so the usual state-entanglement toolkit applies to
//! it: an operator Schmidt spectrum, a linear entropy, and — for operators
//! that split into two product terms — a concurrence. This crate computes
//! each of those quantities along independent routes (singular values of the
//! realigned operator, permutation-operator traces on the doubled space,
//! closed forms on the factors) so that every number can be cross-checked,
//! together with the entangling power of the associated evolution and a
//! seeded Monte-Carlo estimator for it.
//!
//! Modules:
//! - [`tensor`]: dense complex matrices, Kronecker products, partial traces,
//!   permutation operators and symmetric projectors.
//! - [`hs`]: Hilbert-Schmidt inner product, realignment, Schmidt spectrum.
//! - [`measures`]: linear entropy, exchange entropy, entangling power
//!   (direct, relation, Monte-Carlo), and the concurrence routes.
//! - [`gates`]: the catalog of operator families with closed-form
//!   concurrences.
//! - [`sampling`]: counter-addressed Haar sampling.

pub mod error;
pub mod gates;
pub mod hs;
pub mod measures;
pub mod sampling;
pub mod tensor;

pub use error::{Error, Result};
pub use hs::{hs_inner, hs_norm, realign, schmidt_spectrum, OperatorState, SchmidtSpectrum};
pub use measures::{
    concurrence_from_spectrum, concurrence_two_term, entangling_power_direct,
    entangling_power_mc, entangling_power_via_relation, exchange_entropy, linear_entropy,
    linear_entropy_fold4, measure_report, pure_state_concurrence, reduce_to_two_qubit,
    state_linear_entropy, CapPolicy, McEstimate, MeasureReport, TwoQubitReduction,
    TwoTermDecomposition, FOLD4_DIM_CAP,
};
pub use tensor::{
    check_unitary, kron, partial_trace, permutation_operator, swap_operator,
    symmetric_projector, Bipartition, DenseMatrix, Keep, Sign, SubsystemLayout, UnitarityCheck,
    UNITARY_TOL,
};
pub use gates::GateSpec;
