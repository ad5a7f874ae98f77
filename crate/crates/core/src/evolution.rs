//! Exact unitary evolution in the Dicke basis from a single eigendecomposition.

use num_complex::Complex64;

use crate::dicke::{make_all_down, SymmetricState};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, HamiltonianSpec, HermitianMatrix};
use crate::linalg;

/// Spectral decomposition `H = V diag(E) V†`.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    eigenvalues: Vec<f64>,
    /// Row-major, columns are eigenvectors.
    eigenvectors: Vec<Complex64>,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SymmetricState>,
}

pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<Propagator> {
    let (eigenvalues, eigenvectors) = linalg::hermitian_jacobi(h)?;
    Ok(Propagator {
        eigenvalues,
        eigenvectors,
        dim: h.dim(),
    })
}

impl Propagator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Complex64] {
        &self.eigenvectors
    }

    pub fn reconstruction_residual(&self, h: &HermitianMatrix) -> f64 {
        linalg::reconstruction_residual(h, &self.eigenvalues, &self.eigenvectors)
    }

    pub fn orthonormality_residual(&self) -> f64 {
        linalg::orthonormality_residual(&self.eigenvectors, self.dim)
    }

    /// Projects `initial` onto the eigenbasis once so that many times can be
    /// evaluated at `O(dim²)` each.
    pub fn evolver(&self, initial: &SymmetricState) -> Result<Evolver<'_>> {
        if initial.dim() != self.dim {
            return Err(Error::domain(format!(
                "state dimension {} does not match propagator dimension {}",
                initial.dim(),
                self.dim
            )));
        }
        let n = self.dim;
        let c0 = initial.amplitudes();
        let weights = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| self.eigenvectors[i * n + k].conj() * c0[i])
                    .sum()
            })
            .collect();
        Ok(Evolver {
            propagator: self,
            n_qubits: initial.n_qubits(),
            weights,
        })
    }
}

/// An initial state expanded in the eigenbasis of a [`Propagator`].
#[derive(Debug, Clone)]
pub struct Evolver<'a> {
    propagator: &'a Propagator,
    n_qubits: usize,
    weights: Vec<Complex64>,
}

impl Evolver<'_> {
    pub fn at(&self, t: f64) -> SymmetricState {
        let n = self.propagator.dim;
        let phased: Vec<Complex64> = self
            .weights
            .iter()
            .zip(&self.propagator.eigenvalues)
            .map(|(w, &e)| w * Complex64::from_polar(1.0, -e * t))
            .collect();
        let v = &self.propagator.eigenvectors;
        let amplitudes = (0..n)
            .map(|i| {
                let row = &v[i * n..(i + 1) * n];
                row.iter().zip(&phased).map(|(a, b)| a * b).sum()
            })
            .collect();
        SymmetricState::from_normalized(self.n_qubits, amplitudes)
    }
}

/// `c(t) = V e^{-iEt} V† c(0)`.
pub fn evolve_to(prop: &Propagator, initial: &SymmetricState, t: f64) -> Result<SymmetricState> {
    if t == 0.0 {
        if initial.dim() != prop.dim {
            return Err(Error::domain("state dimension does not match propagator"));
        }
        return Ok(initial.clone());
    }
    Ok(prop.evolver(initial)?.at(t))
}

/// Time grid `0, dt, 2dt, …` extended to cover `t_max`.
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max.is_finite() && dt.is_finite() && t_max > 0.0 && dt > 0.0 && dt <= t_max) {
        return Err(Error::domain(format!(
            "invalid time grid t_max={t_max}, dt={dt}"
        )));
    }
    let steps = (t_max / dt - 1e-9).ceil() as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

/// Evolution of `|0⟩_J` under `spec` sampled on [`time_grid`].
pub fn trajectory(
    spec: &HamiltonianSpec,
    n_qubits: usize,
    t_max: f64,
    dt: f64,
) -> Result<Trajectory> {
    let times = time_grid(t_max, dt)?;
    let h = build_hamiltonian(spec, n_qubits)?;
    let prop = hermitian_eigen(&h)?;
    let initial = make_all_down(n_qubits)?;
    let evolver = prop.evolver(&initial)?;
    let states = times
        .iter()
        .map(|&t| {
            if t == 0.0 {
                initial.clone()
            } else {
                evolver.at(t)
            }
        })
        .collect();
    Ok(Trajectory { times, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::{parity_class, ParityClass};
    use crate::hamiltonian::HamiltonianSpec;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Classical RK4 on `i dc/dt = H c`, used only as an independent check.
    fn rk4(h: &HermitianMatrix, c0: &[Complex64], t: f64, steps: usize) -> Vec<Complex64> {
        let dt = t / steps as f64;
        let minus_i = c(0.0, -1.0);
        let deriv = |v: &[Complex64]| -> Vec<Complex64> {
            h.mul_vec(v).into_iter().map(|x| x * minus_i).collect()
        };
        let axpy = |a: &[Complex64], b: &[Complex64], s: f64| -> Vec<Complex64> {
            a.iter().zip(b).map(|(x, y)| x + y * s).collect()
        };
        let mut v = c0.to_vec();
        for _ in 0..steps {
            let k1 = deriv(&v);
            let k2 = deriv(&axpy(&v, &k1, dt / 2.0));
            let k3 = deriv(&axpy(&v, &k2, dt / 2.0));
            let k4 = deriv(&axpy(&v, &k3, dt));
            for i in 0..v.len() {
                v[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
            }
        }
        v
    }

    #[test]
    fn eigenvalues_of_one_axis_two_qubits() {
        let h = build_hamiltonian(&HamiltonianSpec::one_axis(1.0), 2).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        for (got, want) in p.eigenvalues().iter().zip([0.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(p.reconstruction_residual(&h) < 1e-14);
    }

    #[test]
    fn analytic_two_qubit_one_axis_amplitudes() {
        let h = build_hamiltonian(&HamiltonianSpec::one_axis(1.0), 2).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        let init = make_all_down(2).unwrap();
        for &t in &[0.0, 0.3, PI / 4.0, 1.7, 5.0] {
            let s = evolve_to(&p, &init, t).unwrap();
            let e = Complex64::from_polar(1.0, -t);
            let want = [(e + 1.0) / 2.0, c(0.0, 0.0), (e - 1.0) / 2.0];
            for (got, w) in s.amplitudes().iter().zip(want) {
                assert!((got - w).norm() < 1e-14, "t={t}");
            }
        }
    }

    #[test]
    fn zero_time_is_identity_and_backwards_returns() {
        let spec = HamiltonianSpec {
            mu: 0.3,
            chi: 1.1,
            gamma_sym: -0.4,
            gamma_twist: 0.2,
            f_coeffs: vec![0.0, 0.7],
        };
        let h = build_hamiltonian(&spec, 7).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        let (init, _) = crate::dicke::make_state(
            7,
            &(0..8)
                .map(|k| c(k as f64, 1.0 - k as f64 * 0.3))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(evolve_to(&p, &init, 0.0).unwrap(), init);
        let forward = evolve_to(&p, &init, 2.3).unwrap();
        let back = evolve_to(&p, &forward, -2.3).unwrap();
        for (a, b) in back.amplitudes().iter().zip(init.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn matches_rk4() {
        let spec = HamiltonianSpec::one_axis_field(1.0, 0.5);
        let h = build_hamiltonian(&spec, 6).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        let init = make_all_down(6).unwrap();
        let exact = evolve_to(&p, &init, 1.5).unwrap();
        let approx = rk4(&h, init.amplitudes(), 1.5, 4000);
        for (a, b) in exact.amplitudes().iter().zip(&approx) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let h = build_hamiltonian(&HamiltonianSpec::one_axis(1.0), 3).unwrap();
        let p = hermitian_eigen(&h).unwrap();
        assert!(evolve_to(&p, &make_all_down(2).unwrap(), 1.0).is_err());
    }

    #[test]
    fn grid_shape() {
        let tr = trajectory(&HamiltonianSpec::one_axis(1.0), 2, PI, PI / 100.0).unwrap();
        assert_eq!(tr.times.len(), 101);
        for s in &tr.states {
            assert!((s.norm() - 1.0).abs() < 1e-12);
            assert_eq!(parity_class(s), ParityClass::Even);
        }
        let g = time_grid(1.0, 0.3).unwrap();
        assert_eq!(g.len(), 5);
        assert!(*g.last().unwrap() >= 1.0);
        assert!(time_grid(1.0, 0.0).is_err());
        assert!(time_grid(1.0, 2.0).is_err());
        assert!(time_grid(-1.0, 0.1).is_err());
    }
}
