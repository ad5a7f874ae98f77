//! Spin squeezing and pairwise entanglement of symmetric multiqubit states.
//!
//! States live in the `(N+1)`-dimensional Dicke basis. The crate evolves them
//! under quadratic collective Hamiltonians, evaluates the Kitagawa–Ueda
//! squeezing parameter, reconstructs the two-qubit reduced state from
//! collective moments, and computes its concurrence. [`oracle`] provides an
//! independent full tensor-product simulation used for cross-checks, and
//! [`verify`] bundles those cross-checks into named suites.

// Index loops read better in the matrix code; negated comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod csv;
pub mod dicke;
pub mod error;
pub mod evolution;
pub mod hamiltonian;
pub mod linalg;
pub mod observables;
pub mod oracle;
pub mod pairwise;
pub mod squeezing;
pub mod verify;

pub use dicke::{
    collective_moments, make_all_down, make_dicke_state, make_state, mix_moments, parity_class,
    CollectiveMoments, ParityClass, SymmetricState,
};
pub use error::{Error, Result};
pub use evolution::{evolve_to, hermitian_eigen, time_grid, trajectory, Propagator, Trajectory};
pub use hamiltonian::{build_hamiltonian, parity_check, HamiltonianSpec, HermitianMatrix};
pub use observables::PointObservables;
pub use pairwise::{
    concurrence, concurrence_spectral, concurrence_x_form, prop3_residual, reduced_two_qubit,
    squeezing_condition, ConcurrenceBranch, ConcurrenceResult, Density4, SqueezingCondition,
    TwoQubitReduced,
};
pub use squeezing::{
    squeezing_even_odd, squeezing_from_correlation, squeezing_general, squeezing_lower_bound,
    SqueezingMethod, SqueezingResult,
};
