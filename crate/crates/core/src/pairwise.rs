//! Two-qubit reduced state of an exchange-symmetric state, its concurrence,
//! and the pairwise form of the squeezing parameter.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with `|0⟩` the excited qubit
//! state. The reduced matrix is
//!
//! ```text
//! [ v₊   x₊*  x₊*  u*  ]
//! [ x₊   y    y    x₋* ]
//! [ x₊   y    y    x₋* ]
//! [ u    x₋   x₋   v₋  ]
//! ```

use num_complex::Complex64;

use crate::dicke::CollectiveMoments;
use crate::error::{Error, Result};
use crate::linalg::{self, HermitianMatrix};

/// `|x±|` allowed for the X-form closed expression.
pub const X_FORM_THRESHOLD: f64 = 1e-8;

pub type Density4 = [[Complex64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitReduced {
    pub n_qubits: usize,
    pub v_plus: f64,
    pub v_minus: f64,
    pub y: f64,
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub u: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConcurrenceBranch {
    /// `2y ≤ √(v₊v₋) + |u|`, giving `C = 2(|u| - y)`.
    CoherenceDominated,
    /// `2y > √(v₊v₋) + |u|`, giving `C = 2(y - √(v₊v₋))`.
    PopulationDominated,
    Spectral,
}

impl ConcurrenceBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            ConcurrenceBranch::CoherenceDominated => "coherence_dominated",
            ConcurrenceBranch::PopulationDominated => "population_dominated",
            ConcurrenceBranch::Spectral => "spectral",
        }
    }
}

/// Concurrence without the usual `max(0, ·)` clamp, so negative values mean
/// the pair is not entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    pub concurrence: f64,
    /// Descending.
    pub lambdas: [f64; 4],
    pub branch: ConcurrenceBranch,
}

impl ConcurrenceResult {
    fn from_lambdas(mut lambdas: [f64; 4], branch: ConcurrenceBranch) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        Self {
            concurrence: lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3],
            lambdas,
            branch,
        }
    }

    pub fn entangled(&self) -> bool {
        self.concurrence > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingCondition {
    pub satisfied: bool,
    /// `|u| - y`.
    pub margin: f64,
    pub xi2: f64,
}

impl TwoQubitReduced {
    pub fn to_matrix(&self) -> Density4 {
        let vp = Complex64::new(self.v_plus, 0.0);
        let vm = Complex64::new(self.v_minus, 0.0);
        let y = Complex64::new(self.y, 0.0);
        let (xp, xm, u) = (self.x_plus, self.x_minus, self.u);
        [
            [vp, xp.conj(), xp.conj(), u.conj()],
            [xp, y, y, xm.conj()],
            [xp, y, y, xm.conj()],
            [u, xm, xm, vm],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.v_plus + self.v_minus + 2.0 * self.y
    }

    /// Checks trace, non-negative populations and `v₊v₋ ≥ |u|²`.
    pub fn validate(&self) -> Result<()> {
        let trace_err = (self.trace() - 1.0).abs();
        if trace_err > 1e-10 {
            return Err(Error::numerical("reduced matrix trace is not 1", trace_err));
        }
        let min_pop = self.v_plus.min(self.v_minus).min(self.y);
        if min_pop < -1e-12 {
            return Err(Error::numerical("negative population", min_pop));
        }
        let gap = self.v_plus * self.v_minus - self.u.norm_sqr();
        if gap < -1e-10 {
            return Err(Error::numerical("v₊v₋ < |u|²", gap));
        }
        Ok(())
    }
}

/// Reduced two-qubit parameters from collective moments:
///
/// ```text
/// v± = (N² - 2N + 4⟨Sz²⟩ ± 4⟨Sz⟩(N-1)) / (4N(N-1))
/// x± = ((N-1)⟨S₊⟩ ± ⟨[S₊,Sz]₊⟩) / (2N(N-1))
/// y  = (N² - 4⟨Sz²⟩) / (4N(N-1))
/// u  = ⟨S₊²⟩ / (N(N-1))
/// ```
pub fn reduced_two_qubit(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
    if m.n_qubits < 2 {
        return Err(Error::domain("a qubit pair needs N >= 2"));
    }
    let n = m.n_qubits as f64;
    let pairs = n * (n - 1.0);
    let base = n * n - 2.0 * n + 4.0 * m.sz2;
    let polar = 4.0 * m.mean_sz * (n - 1.0);
    Ok(TwoQubitReduced {
        n_qubits: m.n_qubits,
        v_plus: (base + polar) / (4.0 * pairs),
        v_minus: (base - polar) / (4.0 * pairs),
        y: (n * n - 4.0 * m.sz2) / (4.0 * pairs),
        x_plus: (m.sp_mean * (n - 1.0) + m.anti_sp_sz) / (2.0 * pairs),
        x_minus: (m.sp_mean * (n - 1.0) - m.anti_sp_sz) / (2.0 * pairs),
        u: m.sp2 / pairs,
    })
}

/// Closed-form concurrence of the X-shaped reduced matrix (`x± = 0`).
pub fn concurrence_x_form(r: &TwoQubitReduced) -> Result<ConcurrenceResult> {
    let residual = r.x_plus.norm().max(r.x_minus.norm());
    if !(residual <= X_FORM_THRESHOLD) {
        return Err(Error::NotXForm { residual });
    }
    let s = (r.v_plus * r.v_minus).max(0.0).sqrt();
    let u = r.u.norm();
    let y2 = 2.0 * r.y.max(0.0);
    let branch = if y2 <= s + u {
        ConcurrenceBranch::CoherenceDominated
    } else {
        ConcurrenceBranch::PopulationDominated
    };
    Ok(ConcurrenceResult::from_lambdas(
        [s + u, (s - u).abs(), y2, 0.0],
        branch,
    ))
}

const SIGMA_YY: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

/// Concurrence `λ₁ - λ₂ - λ₃ - λ₄` of an arbitrary two-qubit density matrix,
/// where `λᵢ²` are the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`.
///
/// With `ρ = AA†`, those eigenvalues are the squared singular values of the
/// complex-symmetric matrix `Aᵀ(σy⊗σy)A`. The singular values are taken
/// directly, which keeps `λᵢ ≈ 0` accurate where square roots of tiny
/// eigenvalues would not be.
pub fn concurrence_spectral(rho: &Density4) -> Result<ConcurrenceResult> {
    let flat: Vec<Complex64> = rho.iter().flatten().copied().collect();
    let h = HermitianMatrix::from_fn(4, |i, j| flat[i * 4 + j]);
    let herm = h.hermiticity_residual();
    if herm > 1e-10 {
        return Err(Error::numerical("density matrix is not Hermitian", herm));
    }
    let trace: f64 = (0..4).map(|i| rho[i][i].re).sum();
    if (trace - 1.0).abs() > 1e-10 {
        return Err(Error::numerical(
            "density matrix trace is not 1",
            trace - 1.0,
        ));
    }
    let (eigenvalues, vectors) = linalg::hermitian_jacobi(&h)?;
    if eigenvalues[0] < -1e-10 {
        return Err(Error::numerical(
            "density matrix is not positive semidefinite",
            eigenvalues[0],
        ));
    }

    // A = V diag(√d)
    let mut a = [[Complex64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        let scale = eigenvalues[k].max(0.0).sqrt();
        for i in 0..4 {
            a[i][k] = vectors[i * 4 + k] * scale;
        }
    }
    // B = Aᵀ Y A
    let mut b = vec![Complex64::new(0.0, 0.0); 16];
    for p in 0..4 {
        for q in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    if SIGMA_YY[i][j] != 0.0 {
                        acc += a[i][p] * a[j][q] * SIGMA_YY[i][j];
                    }
                }
            }
            b[p * 4 + q] = acc;
        }
    }
    let sv = linalg::singular_values(&b, 4, 4)?;
    let lambdas = [sv[0], sv[1], sv[2], sv[3]];

    // tr(ρ ρ̃) must equal Σλᵢ² and be real.
    let tilde = spin_flip(rho);
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for k in 0..4 {
            tr += rho[i][k] * tilde[k][i];
        }
    }
    let sum_sq: f64 = lambdas.iter().map(|l| l * l).sum();
    let mismatch = (tr.re - sum_sq).abs().max(tr.im.abs());
    if mismatch > 1e-9 {
        return Err(Error::numerical(
            "spin-flipped product spectrum is inconsistent",
            mismatch,
        ));
    }
    Ok(ConcurrenceResult::from_lambdas(
        lambdas,
        ConcurrenceBranch::Spectral,
    ))
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &Density4) -> Density4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..4 {
                for l in 0..4 {
                    let w = SIGMA_YY[i][k] * SIGMA_YY[l][j];
                    if w != 0.0 {
                        acc += rho[k][l].conj() * w;
                    }
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// X-form concurrence when applicable, spectral otherwise.
pub fn concurrence(r: &TwoQubitReduced) -> Result<ConcurrenceResult> {
    match concurrence_x_form(r) {
        Err(Error::NotXForm { .. }) => concurrence_spectral(&r.to_matrix()),
        other => other,
    }
}

/// Squeezing holds iff `|u| - y > 0`, with `ξ² = 1 - 2(N-1)(|u| - y)`.
pub fn squeezing_condition(r: &TwoQubitReduced) -> SqueezingCondition {
    let margin = r.u.norm() - r.y;
    SqueezingCondition {
        satisfied: margin > 0.0,
        margin,
        xi2: 1.0 - 2.0 * (r.n_qubits as f64 - 1.0) * margin,
    }
}

/// `ξ² - 1 + (N-1)C`, zero wherever `ξ² = 1 - (N-1)C` holds.
pub fn prop3_residual(xi2: f64, concurrence: f64, n_qubits: usize) -> Result<f64> {
    if n_qubits < 2 {
        return Err(Error::domain("N must be at least 2"));
    }
    Ok(xi2 - 1.0 + (n_qubits as f64 - 1.0) * concurrence)
}
