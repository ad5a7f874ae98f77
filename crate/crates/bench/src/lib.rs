//! Shared inputs for the benchmarks.

use spinsq::{
    build_hamiltonian, collective_moments, hermitian_eigen, make_all_down, reduced_two_qubit,
    Density4, HamiltonianSpec, HermitianMatrix, Propagator,
};

/// A Hamiltonian with every coupling switched on.
pub fn general_spec() -> HamiltonianSpec {
    HamiltonianSpec {
        mu: 1.0,
        chi: 0.3,
        gamma_sym: -0.4,
        gamma_twist: 0.7,
        f_coeffs: vec![0.0, 0.5, 0.1],
    }
}

pub fn hamiltonian(n_qubits: usize) -> HermitianMatrix {
    build_hamiltonian(&general_spec(), n_qubits).expect("valid spec")
}

pub fn propagator(n_qubits: usize) -> Propagator {
    hermitian_eigen(&hamiltonian(n_qubits)).expect("converges")
}

/// Reduced two-qubit matrix of a squeezed one-axis state.
pub fn squeezed_pair(n_qubits: usize) -> Density4 {
    let p = hermitian_eigen(&build_hamiltonian(&HamiltonianSpec::one_axis(1.0), n_qubits).unwrap())
        .unwrap();
    let s = spinsq::evolve_to(&p, &make_all_down(n_qubits).unwrap(), 0.3).unwrap();
    reduced_two_qubit(&collective_moments(&s))
        .unwrap()
        .to_matrix()
}
