//! Quadratic collective Hamiltonians in the Dicke basis:
//!
//! `H = μ Sx² + χ Sy² + γ_s (SxSy + SySx) + γ_t (S₊² - S₋²)/(2i) + f(Sz)`
//!
//! The last two-axis term equals `SxSy + SySx`; it is kept as its own
//! coefficient so the counter-twisting model reads the way it is usually
//! written.

use num_complex::Complex64;

use crate::dicke::{ladder_coefficient, sz_eigenvalue};
use crate::error::{Error, Result};
pub use crate::linalg::HermitianMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub mu: f64,
    pub chi: f64,
    pub gamma_sym: f64,
    pub gamma_twist: f64,
    /// Coefficients of `f(Sz)` in ascending powers.
    pub f_coeffs: Vec<f64>,
}

impl HamiltonianSpec {
    pub fn zero() -> Self {
        Self {
            mu: 0.0,
            chi: 0.0,
            gamma_sym: 0.0,
            gamma_twist: 0.0,
            f_coeffs: Vec::new(),
        }
    }

    /// One-axis twisting `μ Sx²`.
    pub fn one_axis(mu: f64) -> Self {
        Self { mu, ..Self::zero() }
    }

    /// One-axis twisting with a transverse field, `μ Sx² + Ω Sz`.
    pub fn one_axis_field(mu: f64, omega: f64) -> Self {
        Self {
            mu,
            f_coeffs: vec![0.0, omega],
            ..Self::zero()
        }
    }

    /// Two-axis counter-twisting `(γ/2i)(S₊² - S₋²)`.
    pub fn two_axis(gamma: f64) -> Self {
        Self {
            gamma_twist: gamma,
            ..Self::zero()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mu, self.chi, self.gamma_sym, self.gamma_twist]
            .iter()
            .chain(&self.f_coeffs)
            .all(|c| c.is_finite());
        if finite {
            Ok(())
        } else {
            Err(Error::domain("Hamiltonian coefficients must be finite"))
        }
    }

    /// `f(m)` by Horner's rule.
    pub fn f_at(&self, m: f64) -> f64 {
        self.f_coeffs.iter().rev().fold(0.0, |acc, &c| acc * m + c)
    }
}

/// Dense matrix of `spec` over the Dicke basis `n = 0..=N`.
pub fn build_hamiltonian(spec: &HamiltonianSpec, n_qubits: usize) -> Result<HermitianMatrix> {
    if n_qubits < 1 {
        return Err(Error::domain("N must be at least 1"));
    }
    spec.validate()?;
    let dim = n_qubits + 1;
    let mut h = HermitianMatrix::zeros(dim);

    for n in 0..dim {
        // ⟨n|S₊S₋ + S₋S₊|n⟩
        let below = if n > 0 {
            let a = ladder_coefficient(n_qubits, n - 1);
            a * a
        } else {
            0.0
        };
        let above = if n < n_qubits {
            let a = ladder_coefficient(n_qubits, n);
            a * a
        } else {
            0.0
        };
        let ladder_sum = below + above;
        let diag = 0.25 * (spec.mu + spec.chi) * ladder_sum + spec.f_at(sz_eigenvalue(n_qubits, n));
        h.set(n, n, Complex64::new(diag, 0.0));
    }

    for n in 0..n_qubits.saturating_sub(1) {
        // ⟨n+2|S₊²|n⟩
        let e = ladder_coefficient(n_qubits, n) * ladder_coefficient(n_qubits, n + 1);
        let real = 0.25 * (spec.mu - spec.chi) * e;
        // (SxSy + SySx) and (S₊² - S₋²)/(2i) both give -i e/2 below the diagonal.
        let imag = -0.5 * (spec.gamma_sym + spec.gamma_twist) * e;
        let lower = Complex64::new(real, imag);
        h.set(n + 2, n, lower);
        h.set(n, n + 2, lower.conj());
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Matrix of a single collective spin component in the Dicke basis.
pub fn spin_component(axis: Axis, n_qubits: usize) -> HermitianMatrix {
    let dim = n_qubits + 1;
    let mut m = HermitianMatrix::zeros(dim);
    match axis {
        Axis::Z => {
            for n in 0..dim {
                m.set(n, n, Complex64::new(sz_eigenvalue(n_qubits, n), 0.0));
            }
        }
        Axis::X | Axis::Y => {
            for n in 0..n_qubits {
                let a = 0.5 * ladder_coefficient(n_qubits, n);
                let lower = match axis {
                    Axis::X => Complex64::new(a, 0.0),
                    _ => Complex64::new(0.0, -a),
                };
                m.set(n + 1, n, lower);
                m.set(n, n + 1, lower.conj());
            }
        }
    }
    m
}

/// Max-norm of `[P, H]` with `P = diag((-1)ⁿ)`.
pub fn parity_check(spec: &HamiltonianSpec, n_qubits: usize) -> Result<f64> {
    let h = build_hamiltonian(spec, n_qubits)?;
    let mut worst = 0.0f64;
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            if (i + j) % 2 == 1 {
                worst = worst.max(2.0 * h.get(i, j).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
        let n = a.dim();
        HermitianMatrix::from_fn(n, |i, j| (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_axis_two_qubits() {
        let h = build_hamiltonian(&HamiltonianSpec::one_axis(1.0), 2).unwrap();
        let expected = [[0.5, 0.0, 0.5], [0.0, 1.0, 0.0], [0.5, 0.0, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (h.get(i, j) - c(expected[i][j], 0.0)).norm() < 1e-15,
                    "({i},{j})"
                );
            }
        }
    }

    #[test]
    fn two_axis_two_qubits() {
        let h = build_hamiltonian(&HamiltonianSpec::two_axis(1.0), 2).unwrap();
        // ⟨2|S₊²|0⟩ = 2, so the (2,0) entry is 2/(2i) = -i.
        assert!((h.get(2, 0) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((h.get(0, 2) - c(0.0, 1.0)).norm() < 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 2) && (i, j) != (2, 0) {
                    assert_eq!(h.get(i, j), c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn constant_f_is_identity() {
        let spec = HamiltonianSpec {
            f_coeffs: vec![2.5],
            ..HamiltonianSpec::zero()
        };
        let h = build_hamiltonian(&spec, 5).unwrap();
        assert_eq!(h, HermitianMatrix::from_real_diagonal(&[2.5; 6]));
    }

    #[test]
    fn matches_products_of_spin_components() {
        for nq in 1..=9 {
            let sx = spin_component(Axis::X, nq);
            let sy = spin_component(Axis::Y, nq);
            let sz = spin_component(Axis::Z, nq);
            let spec = HamiltonianSpec {
                mu: 0.7,
                chi: -1.3,
                gamma_sym: 0.4,
                gamma_twist: 0.0,
                f_coeffs: vec![0.1, -0.5, 0.25],
            };
            let sxsx = matmul(&sx, &sx);
            let sysy = matmul(&sy, &sy);
            let sxsy = matmul(&sx, &sy);
            let sysx = matmul(&sy, &sx);
            let szsz = matmul(&sz, &sz);
            let expected = HermitianMatrix::from_fn(nq + 1, |i, j| {
                sxsx.get(i, j) * spec.mu
                    + sysy.get(i, j) * spec.chi
                    + (sxsy.get(i, j) + sysx.get(i, j)) * spec.gamma_sym
                    + if i == j { c(0.1, 0.0) } else { c(0.0, 0.0) }
                    + sz.get(i, j) * -0.5
                    + szsz.get(i, j) * 0.25
            });
            let h = build_hamiltonian(&spec, nq).unwrap();
            assert!(h.max_abs_diff(&expected) < 1e-12, "N={nq}");
        }
    }

    #[test]
    fn twist_and_symmetric_forms_coincide() {
        for nq in 1..=12 {
            let twist = build_hamiltonian(&HamiltonianSpec::two_axis(1.3), nq).unwrap();
            let sym = build_hamiltonian(
                &HamiltonianSpec {
                    gamma_sym: 1.3,
                    ..HamiltonianSpec::zero()
                },
                nq,
            )
            .unwrap();
            assert!(twist.max_abs_diff(&sym) < 1e-14);
        }
    }

    #[test]
    fn pentadiagonal_and_hermitian() {
        let spec = HamiltonianSpec {
            mu: 3.0,
            chi: -7.5,
            gamma_sym: 9.1,
            gamma_twist: -2.2,
            f_coeffs: vec![1.0, 2.0, -3.0],
        };
        let h = build_hamiltonian(&spec, 20).unwrap();
        assert!(h.hermiticity_residual() <= 1e-14);
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                if i.abs_diff(j) > 2 {
                    assert_eq!(h.get(i, j), c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn parity_commutes() {
        for spec in [
            HamiltonianSpec::one_axis(1.0),
            HamiltonianSpec::two_axis(1.0),
            HamiltonianSpec::one_axis_field(1.0, 2.0),
        ] {
            assert!(parity_check(&spec, 6).unwrap() <= 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_hamiltonian(&HamiltonianSpec::one_axis(1.0), 0).is_err());
        assert!(build_hamiltonian(&HamiltonianSpec::one_axis(f64::NAN), 3).is_err());
    }
}
