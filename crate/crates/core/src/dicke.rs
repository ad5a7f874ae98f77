//! Symmetric N-qubit states in the Dicke basis and their collective-spin moments.
//!
//! The basis state `|n⟩` carries `n` excitations over the all-down state and is
//! the `Sz` eigenstate with `m = n - N/2`. Ladder action:
//! `S₊|n⟩ = √((N-n)(n+1)) |n+1⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const NORM_TOLERANCE: f64 = 1e-12;
pub const PARITY_TOLERANCE: f64 = 1e-12;

/// A normalized pure state in the maximal-J symmetric subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Even,
    Odd,
    Mixed,
}

/// First and second moments of the collective spin operators.
///
/// `anti_*` fields hold anticommutator expectations, e.g.
/// `anti_sx_sy = ⟨SxSy + SySx⟩`. These moments are affine in the density
/// operator, so mixtures are handled by [`mix_moments`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveMoments {
    pub n_qubits: usize,
    pub mean_sx: f64,
    pub mean_sy: f64,
    pub mean_sz: f64,
    pub sx2: f64,
    pub sy2: f64,
    pub sz2: f64,
    pub sp_mean: Complex64,
    pub sp2: Complex64,
    pub anti_sp_sz: Complex64,
    pub anti_sx_sy: f64,
}

#[inline]
pub(crate) fn ladder_coefficient(n_qubits: usize, n: usize) -> f64 {
    (((n_qubits - n) * (n + 1)) as f64).sqrt()
}

#[inline]
pub(crate) fn sz_eigenvalue(n_qubits: usize, n: usize) -> f64 {
    n as f64 - n_qubits as f64 / 2.0
}

impl SymmetricState {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Re-checks the normalization invariant.
    pub fn validate(&self) -> Result<()> {
        if self.amplitudes.len() != self.n_qubits + 1 {
            return Err(Error::domain("amplitude vector length must be N + 1"));
        }
        let norm2: f64 = self.amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::numerical("state is not normalized", norm2 - 1.0));
        }
        Ok(())
    }

    /// Wraps amplitudes the caller guarantees to be normalized.
    pub(crate) fn from_normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), n_qubits + 1);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// Rotation about z by `angle`: `cₙ → e^{-i angle n} cₙ`.
    pub fn rotate_z(&self, angle: f64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, &c)| c * Complex64::from_polar(1.0, -angle * n as f64))
            .collect();
        Self::from_normalized(self.n_qubits, amplitudes)
    }

    pub fn inner(&self, other: &SymmetricState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

pub fn make_dicke_state(n_qubits: usize, n: usize) -> Result<SymmetricState> {
    if n_qubits < 1 {
        return Err(Error::domain("N must be at least 1"));
    }
    if n > n_qubits {
        return Err(Error::domain(format!(
            "excitation number {n} outside 0..={n_qubits}"
        )));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_qubits + 1];
    amplitudes[n] = Complex64::new(1.0, 0.0);
    Ok(SymmetricState::from_normalized(n_qubits, amplitudes))
}

/// The all-down product state `|0⟩_J`, the initial state of every evolution.
pub fn make_all_down(n_qubits: usize) -> Result<SymmetricState> {
    make_dicke_state(n_qubits, 0)
}

/// Normalizes `amplitudes` and returns the state with the factor that was applied.
pub fn make_state(n_qubits: usize, amplitudes: &[Complex64]) -> Result<(SymmetricState, f64)> {
    if n_qubits < 1 {
        return Err(Error::domain("N must be at least 1"));
    }
    if amplitudes.len() != n_qubits + 1 {
        return Err(Error::domain(format!(
            "expected {} amplitudes, got {}",
            n_qubits + 1,
            amplitudes.len()
        )));
    }
    if amplitudes
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::domain("amplitudes must be finite"));
    }
    let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm <= 1e-12 {
        return Err(Error::domain("amplitude vector has near-zero norm"));
    }
    let factor = 1.0 / norm;
    let normalized = amplitudes.iter().map(|c| c * factor).collect();
    Ok((
        SymmetricState::from_normalized(n_qubits, normalized),
        factor,
    ))
}

pub fn parity_class(state: &SymmetricState) -> ParityClass {
    let mut odd_weight_present = false;
    let mut even_weight_present = false;
    for (n, c) in state.amplitudes.iter().enumerate() {
        if c.norm_sqr() > PARITY_TOLERANCE {
            if n % 2 == 0 {
                even_weight_present = true;
            } else {
                odd_weight_present = true;
            }
        }
    }
    match (even_weight_present, odd_weight_present) {
        (_, false) => ParityClass::Even,
        (false, true) => ParityClass::Odd,
        (true, true) => ParityClass::Mixed,
    }
}

pub fn collective_moments(state: &SymmetricState) -> CollectiveMoments {
    let n_qubits = state.n_qubits;
    let c = &state.amplitudes;
    let j = n_qubits as f64 / 2.0;

    // Dividing by the computed norm keeps ⟨Sz²⟩ ≤ J² to rounding even after
    // evolution has drifted the norm by a few ulps.
    let norm_sqr: f64 = c.iter().map(|a| a.norm_sqr()).sum();
    let scale = 1.0 / norm_sqr;

    let mut mean_sz = 0.0;
    let mut sz2 = 0.0;
    for (n, amp) in c.iter().enumerate() {
        let m = sz_eigenvalue(n_qubits, n);
        let p = amp.norm_sqr();
        mean_sz += p * m;
        sz2 += p * m * m;
    }
    mean_sz *= scale;
    sz2 *= scale;

    let mut sp_mean = Complex64::new(0.0, 0.0);
    let mut anti_sp_sz = Complex64::new(0.0, 0.0);
    for n in 0..n_qubits {
        let a = ladder_coefficient(n_qubits, n);
        let term = c[n + 1].conj() * c[n] * a;
        sp_mean += term;
        anti_sp_sz += term * (sz_eigenvalue(n_qubits, n) + sz_eigenvalue(n_qubits, n + 1));
    }

    let mut sp2 = Complex64::new(0.0, 0.0);
    for n in 0..n_qubits.saturating_sub(1) {
        let a = ladder_coefficient(n_qubits, n) * ladder_coefficient(n_qubits, n + 1);
        sp2 += c[n + 2].conj() * c[n] * a;
    }
    sp_mean *= scale;
    anti_sp_sz *= scale;
    sp2 *= scale;

    // ⟨Sx² + Sy²⟩ = J(J+1) - ⟨Sz²⟩ and ⟨S₊²⟩ = ⟨Sx² - Sy²⟩ + i⟨SxSy + SySx⟩.
    let transverse = j * (j + 1.0) - sz2;
    CollectiveMoments {
        n_qubits,
        mean_sx: sp_mean.re,
        mean_sy: sp_mean.im,
        mean_sz,
        sx2: 0.5 * (transverse + sp2.re),
        sy2: 0.5 * (transverse - sp2.re),
        sz2,
        sp_mean,
        sp2,
        anti_sp_sz,
        anti_sx_sy: sp2.im,
    }
}

/// Convex combination of moments, i.e. the moments of the mixed state
/// `Σ wₖ ρₖ`.
pub fn mix_moments(ensemble: &[(f64, CollectiveMoments)]) -> Result<CollectiveMoments> {
    let Some((_, first)) = ensemble.first() else {
        return Err(Error::domain("empty ensemble"));
    };
    let n_qubits = first.n_qubits;
    let mut total = 0.0;
    for (w, m) in ensemble {
        if !(w.is_finite() && *w >= 0.0) {
            return Err(Error::domain(format!("invalid weight {w}")));
        }
        if m.n_qubits != n_qubits {
            return Err(Error::domain("ensemble members have different N"));
        }
        total += w;
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("weights sum to {total}, not 1")));
    }

    let zero = Complex64::new(0.0, 0.0);
    let mut out = CollectiveMoments {
        n_qubits,
        mean_sx: 0.0,
        mean_sy: 0.0,
        mean_sz: 0.0,
        sx2: 0.0,
        sy2: 0.0,
        sz2: 0.0,
        sp_mean: zero,
        sp2: zero,
        anti_sp_sz: zero,
        anti_sx_sy: 0.0,
    };
    for &(w, m) in ensemble {
        out.mean_sx += w * m.mean_sx;
        out.mean_sy += w * m.mean_sy;
        out.mean_sz += w * m.mean_sz;
        out.sx2 += w * m.sx2;
        out.sy2 += w * m.sy2;
        out.sz2 += w * m.sz2;
        out.sp_mean += m.sp_mean * w;
        out.sp2 += m.sp2 * w;
        out.anti_sp_sz += m.anti_sp_sz * w;
        out.anti_sx_sy += w * m.anti_sx_sy;
    }
    Ok(out)
}

impl CollectiveMoments {
    pub fn mean_spin(&self) -> [f64; 3] {
        [self.mean_sx, self.mean_sy, self.mean_sz]
    }

    pub fn mean_spin_norm(&self) -> f64 {
        let [x, y, z] = self.mean_spin();
        (x * x + y * y + z * z).sqrt()
    }

    /// Symmetrized second moments `⟨SaSb + SbSa⟩/2` over (x, y, z).
    pub fn second_moment_matrix(&self) -> [[f64; 3]; 3] {
        let xy = 0.5 * self.anti_sx_sy;
        let xz = 0.5 * self.anti_sp_sz.re;
        let yz = 0.5 * self.anti_sp_sz.im;
        [[self.sx2, xy, xz], [xy, self.sy2, yz], [xz, yz, self.sz2]]
    }

    /// `⟨(S·n)²⟩` for a unit vector `n`.
    pub fn second_moment_along(&self, n: [f64; 3]) -> f64 {
        self.second_moment_between(n, n)
    }

    /// `⟨[S·a, S·b]₊⟩/2`.
    pub fn second_moment_between(&self, a: [f64; 3], b: [f64; 3]) -> f64 {
        let g = self.second_moment_matrix();
        let mut acc = 0.0;
        for i in 0..3 {
            for k in 0..3 {
                acc += a[i] * g[i][k] * b[k];
            }
        }
        acc
    }

    /// Two-qubit correlation `⟨σᵢₙ ⊗ σⱼₙ⟩` along unit vector `n`, from
    /// `⟨Sₙ²⟩ = [N + N(N-1)⟨σᵢₙσⱼₙ⟩]/4`.
    pub fn pair_correlation_along(&self, n: [f64; 3]) -> f64 {
        let nq = self.n_qubits as f64;
        (4.0 * self.second_moment_along(n) - nq) / (nq * (nq - 1.0))
    }

    pub fn total_spin_squared(&self) -> f64 {
        self.sx2 + self.sy2 + self.sz2
    }
}
