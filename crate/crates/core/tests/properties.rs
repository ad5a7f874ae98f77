use num_complex::Complex64;
use proptest::prelude::*;

use spinsq::csv::format_value;
use spinsq::oracle::{embed_symmetric, partial_trace_pair};
use spinsq::{
    build_hamiltonian, collective_moments, concurrence_spectral, concurrence_x_form, evolve_to,
    hermitian_eigen, make_all_down, make_dicke_state, make_state, parity_check, reduced_two_qubit,
    squeezing_even_odd, squeezing_general, squeezing_lower_bound, HamiltonianSpec,
    PointObservables, SymmetricState,
};

fn amplitudes(max_n: usize) -> impl Strategy<Value = (usize, Vec<Complex64>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n + 1)
                .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()),
        )
    })
}

fn state(max_n: usize) -> impl Strategy<Value = SymmetricState> {
    amplitudes(max_n).prop_filter_map("zero vector", |(n, amps)| {
        make_state(n, &amps).ok().map(|(s, _)| s)
    })
}

/// Zeroes out one parity sector.
fn parity_state(max_n: usize) -> impl Strategy<Value = SymmetricState> {
    (amplitudes(max_n), 0..2usize).prop_filter_map("zero vector", |((n, mut amps), parity)| {
        for (k, a) in amps.iter_mut().enumerate() {
            if k % 2 != parity {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        make_state(n, &amps).ok().map(|(s, _)| s)
    })
}

fn spec() -> impl Strategy<Value = HamiltonianSpec> {
    (
        -10.0..10.0f64,
        -10.0..10.0f64,
        -10.0..10.0f64,
        -10.0..10.0f64,
        prop::collection::vec(-10.0..10.0f64, 0..4),
    )
        .prop_map(
            |(mu, chi, gamma_sym, gamma_twist, f_coeffs)| HamiltonianSpec {
                mu,
                chi,
                gamma_sym,
                gamma_twist,
                f_coeffs,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn total_spin_is_fixed(s in state(60)) {
        let m = collective_moments(&s);
        let j = s.n_qubits() as f64 / 2.0;
        prop_assert!((m.sx2 + m.sy2 + m.sz2 - j * (j + 1.0)).abs() <= 1e-10);
    }

    #[test]
    fn parity_pure_states_point_along_z(s in parity_state(60)) {
        let m = collective_moments(&s);
        prop_assert!(m.mean_sx.abs() <= 1e-12);
        prop_assert!(m.mean_sy.abs() <= 1e-12);
        prop_assert!(m.sp_mean.norm() <= 1e-12);
        if s.n_qubits() >= 2 {
            let r = reduced_two_qubit(&m).unwrap();
            prop_assert!(r.x_plus.norm() <= 1e-12 && r.x_minus.norm() <= 1e-12);
        }
    }

    #[test]
    fn closed_form_properties(s in parity_state(60), angle in 0.0..6.3f64) {
        let m = collective_moments(&s);
        let closed = squeezing_even_odd(&m).unwrap();
        let rotated = squeezing_even_odd(&collective_moments(&s.rotate_z(angle))).unwrap();
        prop_assert!((closed.xi2 - rotated.xi2).abs() <= 1e-12);
        prop_assert!(closed.xi2 - squeezing_lower_bound(&m) >= -1e-12);
        if m.mean_spin_norm() >= 1e-6 {
            let general = squeezing_general(&m).unwrap();
            prop_assert!((general.xi2 - closed.xi2).abs() <= 1e-10);
        }
    }

    #[test]
    fn hamiltonian_structure(spec in spec(), n in 1usize..40) {
        let h = build_hamiltonian(&spec, n).unwrap();
        prop_assert!(h.hermiticity_residual() <= 1e-14);
        for i in 0..=n {
            for j in 0..=n {
                if i.abs_diff(j) > 2 {
                    prop_assert_eq!(h.get(i, j), Complex64::new(0.0, 0.0));
                }
            }
        }
        prop_assert!(parity_check(&spec, n).unwrap() <= 1e-13);
    }

    #[test]
    fn evolution_is_unitary_and_reversible(spec in spec(), s in state(30), t in -5.0..5.0f64) {
        let h = build_hamiltonian(&spec, s.n_qubits()).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        let forward = evolve_to(&p, &s, t).unwrap();
        prop_assert!((forward.norm() - 1.0).abs() <= 1e-12);
        let energy = h.expectation(s.amplitudes());
        let scale = 1.0 + h.frobenius_norm();
        prop_assert!((h.expectation(forward.amplitudes()) - energy).abs() <= 1e-12 * scale);
        let back = evolve_to(&p, &forward, -t).unwrap();
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn reduced_matrix_matches_partial_trace(s in state(8)) {
        prop_assume!(s.n_qubits() >= 2);
        let r = reduced_two_qubit(&collective_moments(&s)).unwrap();
        let rho = partial_trace_pair(&embed_symmetric(&s).unwrap(), 0, 1).unwrap();
        let m = r.to_matrix();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((m[i][j] - rho[i][j]).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn x_form_matches_spectral(s in parity_state(40)) {
        prop_assume!(s.n_qubits() >= 2);
        let r = reduced_two_qubit(&collective_moments(&s)).unwrap();
        let x = concurrence_x_form(&r).unwrap();
        let sp = concurrence_spectral(&r.to_matrix()).unwrap();
        prop_assert!((x.concurrence - sp.concurrence).abs() <= 1e-10);
    }

    #[test]
    fn csv_values_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        let back: f64 = format_value(x, 17).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-15 * x.abs());
    }
}

#[test]
fn dicke_basis_has_no_transverse_moments() {
    for n_qubits in 1..=60 {
        for n in 0..=n_qubits {
            let m = collective_moments(&make_dicke_state(n_qubits, n).unwrap());
            assert_eq!(m.sp_mean, Complex64::new(0.0, 0.0));
            assert_eq!(m.sp2, Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn one_axis_squeezing_tracks_concurrence() {
    // Near t = 0 the one-axis state is squeezed and pairwise entangled.
    let spec = HamiltonianSpec::one_axis(1.0);
    for n in [3, 10, 40] {
        let p = hermitian_eigen(&build_hamiltonian(&spec, n).unwrap()).unwrap();
        let s = evolve_to(&p, &make_all_down(n).unwrap(), 0.05).unwrap();
        let obs = PointObservables::from_state(&s).unwrap();
        assert!(obs.xi2() < 1.0);
        assert!(obs.concurrence.entangled());
        assert!(obs.prop3_residual().abs() < 1e-12);
    }
}
