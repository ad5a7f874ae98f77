//! Independent ground truth on the full `2^N` tensor-product space.
//!
//! Nothing here goes through the Dicke-basis ladder algebra: operators are
//! explicit Pauli sums acting on bitstrings, eigendecompositions come from
//! `nalgebra`, and separable-state moments are built from single-qubit Bloch
//! vectors.
//!
//! Qubit `i` is bit `N-1-i` of the basis index, so qubit 0 is the leftmost
//! label in `|q₀q₁…⟩`. Bit value 0 is the excited state (`σz = +1`) and bit
//! value 1 the ground state, which makes `|0⟩_J` the all-ones bitstring.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, UnitSphere};

use crate::dicke::{CollectiveMoments, SymmetricState};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::pairwise::Density4;

pub const MAX_STATIC_QUBITS: usize = 12;
pub const MAX_EVOLVE_QUBITS: usize = 10;

/// Recorded with every sampled suite so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64";

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    pub n_qubits: usize,
    pub amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableEnsemble {
    pub n_qubits: usize,
    pub weights: Vec<f64>,
    pub bloch_vectors: Vec<[f64; 3]>,
}

/// Second moments the one-axis twisting model admits in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneAxisMoments {
    pub sx2: f64,
    pub sy2: f64,
    pub sz2: f64,
    /// `Re⟨S₊²⟩ = ⟨Sx² - Sy²⟩`; the imaginary part has no closed form here.
    pub sp2_re: f64,
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[inline]
fn excitations(n_qubits: usize, index: usize) -> usize {
    n_qubits - index.count_ones() as usize
}

#[inline]
fn bit_position(n_qubits: usize, qubit: usize) -> usize {
    n_qubits - 1 - qubit
}

impl FullState {
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &FullState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Dicke-basis components `⟨n|ψ⟩` (unnormalized projection).
    pub fn project_symmetric(&self) -> Vec<Complex64> {
        let n = self.n_qubits;
        let mut out = vec![ZERO; n + 1];
        for (index, amp) in self.amplitudes.iter().enumerate() {
            out[excitations(n, index)] += amp;
        }
        for (k, c) in out.iter_mut().enumerate() {
            *c /= binomial(n, k).sqrt();
        }
        out
    }

    /// `1 - ‖P_sym ψ‖²`.
    pub fn symmetric_deficit(&self) -> f64 {
        1.0 - self
            .project_symmetric()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
    }
}

pub fn embed_symmetric(s: &SymmetricState) -> Result<FullState> {
    let n = s.n_qubits();
    if n > MAX_STATIC_QUBITS {
        return Err(Error::Capacity {
            what: "embed_symmetric",
            max: MAX_STATIC_QUBITS,
            got: n,
        });
    }
    let norms: Vec<f64> = (0..=n).map(|k| 1.0 / binomial(n, k).sqrt()).collect();
    let amplitudes = (0..1usize << n)
        .map(|index| {
            let k = excitations(n, index);
            s.amplitudes()[k] * norms[k]
        })
        .collect();
    Ok(FullState {
        n_qubits: n,
        amplitudes,
    })
}

/// `Σᵢ σᵢα/2` applied to `psi`.
fn apply_collective(n_qubits: usize, axis: usize, psi: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; psi.len()];
    for (index, &amp) in psi.iter().enumerate() {
        if amp == ZERO {
            continue;
        }
        for q in 0..n_qubits {
            let bit = 1usize << bit_position(n_qubits, q);
            // bit clear ⇒ |0⟩ (σz = +1)
            let is_ground = index & bit != 0;
            match axis {
                0 => out[index ^ bit] += amp * 0.5,
                1 => {
                    // σy|0⟩ = i|1⟩, σy|1⟩ = -i|0⟩
                    let phase = if is_ground {
                        Complex64::new(0.0, -0.5)
                    } else {
                        Complex64::new(0.0, 0.5)
                    };
                    out[index ^ bit] += amp * phase;
                }
                _ => out[index] += amp * if is_ground { -0.5 } else { 0.5 },
            }
        }
    }
    out
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Collective moments evaluated on the full space.
pub fn full_moments(f: &FullState) -> CollectiveMoments {
    let psi = &f.amplitudes;
    let s: Vec<Vec<Complex64>> = (0..3)
        .map(|a| apply_collective(f.n_qubits, a, psi))
        .collect();
    let mean = |a: usize| dot(psi, &s[a]).re;
    let second = |a: usize, b: usize| dot(&s[a], &s[b]);
    let anti = |a: usize, b: usize| 2.0 * second(a, b).re;

    let (sx, sy, sz) = (mean(0), mean(1), mean(2));
    let sx2 = second(0, 0).re;
    let sy2 = second(1, 1).re;
    let sz2 = second(2, 2).re;
    let anti_xy = anti(0, 1);
    CollectiveMoments {
        n_qubits: f.n_qubits,
        mean_sx: sx,
        mean_sy: sy,
        mean_sz: sz,
        sx2,
        sy2,
        sz2,
        sp_mean: Complex64::new(sx, sy),
        sp2: Complex64::new(sx2 - sy2, anti_xy),
        anti_sp_sz: Complex64::new(anti(0, 2), anti(1, 2)),
        anti_sx_sy: anti_xy,
    }
}

fn collective_matrix(n_qubits: usize, axis: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    let mut basis = vec![ZERO; dim];
    for col in 0..dim {
        basis[col] = Complex64::new(1.0, 0.0);
        let image = apply_collective(n_qubits, axis, &basis);
        for (row, v) in image.into_iter().enumerate() {
            m[(row, col)] = v;
        }
        basis[col] = ZERO;
    }
    m
}

/// The Hamiltonian of `spec` as an explicit `2^N × 2^N` matrix.
pub fn full_hamiltonian(spec: &HamiltonianSpec, n_qubits: usize) -> Result<DMatrix<Complex64>> {
    if n_qubits == 0 || n_qubits > MAX_EVOLVE_QUBITS {
        return Err(Error::Capacity {
            what: "full_hamiltonian",
            max: MAX_EVOLVE_QUBITS,
            got: n_qubits,
        });
    }
    spec.validate()?;
    let sx = collective_matrix(n_qubits, 0);
    let sy = collective_matrix(n_qubits, 1);
    let sz = collective_matrix(n_qubits, 2);
    let i = Complex64::new(0.0, 1.0);
    let sp = &sx + &sy * i;
    let sm = &sx - &sy * i;

    let c = |x: f64| Complex64::new(x, 0.0);
    let mut h = (&sx * &sx) * c(spec.mu) + (&sy * &sy) * c(spec.chi);
    h += (&sx * &sy + &sy * &sx) * c(spec.gamma_sym);
    h += (&sp * &sp - &sm * &sm) * (c(spec.gamma_twist) / (i * 2.0));

    let dim = 1usize << n_qubits;
    let mut power = DMatrix::<Complex64>::identity(dim, dim);
    for &coeff in &spec.f_coeffs {
        h += &power * c(coeff);
        power = &power * &sz;
    }
    Ok(h)
}

/// Full-space propagator, built once and evaluated at many times.
pub struct FullPropagator {
    n_qubits: usize,
    eigen: SymmetricEigen<Complex64, nalgebra::Dyn>,
}

impl FullPropagator {
    pub fn new(spec: &HamiltonianSpec, n_qubits: usize) -> Result<Self> {
        let h = full_hamiltonian(spec, n_qubits)?;
        Ok(Self {
            n_qubits,
            eigen: SymmetricEigen::new(h),
        })
    }

    /// `e^{-iHt}` applied to the all-down state.
    pub fn evolve_all_down(&self, t: f64) -> FullState {
        let dim = 1usize << self.n_qubits;
        let mut psi0 = DVector::from_element(dim, ZERO);
        psi0[dim - 1] = Complex64::new(1.0, 0.0);
        self.evolve(&psi0, t)
    }

    fn evolve(&self, psi0: &DVector<Complex64>, t: f64) -> FullState {
        let v = &self.eigen.eigenvectors;
        let mut w = v.adjoint() * psi0;
        for (k, e) in self.eigen.eigenvalues.iter().enumerate() {
            w[k] *= Complex64::from_polar(1.0, -e * t);
        }
        let psi = v * w;
        FullState {
            n_qubits: self.n_qubits,
            amplitudes: psi.iter().copied().collect(),
        }
    }
}

/// Evolves the all-down state on the full tensor-product space.
pub fn full_evolve(spec: &HamiltonianSpec, n_qubits: usize, t: f64) -> Result<FullState> {
    Ok(FullPropagator::new(spec, n_qubits)?.evolve_all_down(t))
}

/// `Tr_{rest}(|ψ⟩⟨ψ|)` for qubits `i < j`, in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn partial_trace_pair(f: &FullState, i: usize, j: usize) -> Result<Density4> {
    let n = f.n_qubits;
    if !(i < j && j < n) {
        return Err(Error::domain(format!(
            "need 0 <= i < j < N, got i={i}, j={j}, N={n}"
        )));
    }
    let bi = 1usize << bit_position(n, i);
    let bj = 1usize << bit_position(n, j);
    let local = |index: usize| -> usize {
        let a = usize::from(index & bi != 0);
        let b = usize::from(index & bj != 0);
        2 * a + b
    };
    let with_local = |rest: usize, l: usize| -> usize {
        rest | if l & 2 != 0 { bi } else { 0 } | if l & 1 != 0 { bj } else { 0 }
    };
    let mut rho = [[ZERO; 4]; 4];
    for (index, amp) in f.amplitudes.iter().enumerate() {
        if *amp == ZERO {
            continue;
        }
        let row = local(index);
        let rest = index & !(bi | bj);
        for col in 0..4 {
            rho[row][col] += amp * f.amplitudes[with_local(rest, col)].conj();
        }
    }
    Ok(rho)
}

impl SeparableEnsemble {
    pub fn new(n_qubits: usize, weights: Vec<f64>, bloch_vectors: Vec<[f64; 3]>) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::domain("separable ensembles need N >= 2"));
        }
        if weights.is_empty() || weights.len() != bloch_vectors.len() {
            return Err(Error::domain("weights and Bloch vectors must pair up"));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::domain("weights must be non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("weights sum to {total}")));
        }
        for r in &bloch_vectors {
            let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            if len > 1.0 + 1e-12 {
                return Err(Error::domain(format!("Bloch vector length {len} > 1")));
            }
        }
        Ok(Self {
            n_qubits,
            weights,
            bloch_vectors,
        })
    }

    /// Exact moments of `Σₖ pₖ ρₖ^{⊗N}`.
    ///
    /// For a product state with Bloch vector `r`,
    /// `⟨Sa⟩ = N rₐ/2` and `⟨[Sa,Sb]₊⟩ = (N δab + N(N-1) rₐ r_b)/2`.
    pub fn moments(&self) -> CollectiveMoments {
        let n = self.n_qubits as f64;
        let pairs = n * (n - 1.0);
        let mut mean = [0.0; 3];
        let mut anti = [[0.0; 3]; 3];
        for (p, r) in self.weights.iter().zip(&self.bloch_vectors) {
            for a in 0..3 {
                mean[a] += p * n * r[a] / 2.0;
                for b in 0..3 {
                    let delta = if a == b { n } else { 0.0 };
                    anti[a][b] += p * (delta + pairs * r[a] * r[b]) / 2.0;
                }
            }
        }
        let (sx2, sy2, sz2) = (anti[0][0] / 2.0, anti[1][1] / 2.0, anti[2][2] / 2.0);
        CollectiveMoments {
            n_qubits: self.n_qubits,
            mean_sx: mean[0],
            mean_sy: mean[1],
            mean_sz: mean[2],
            sx2,
            sy2,
            sz2,
            sp_mean: Complex64::new(mean[0], mean[1]),
            sp2: Complex64::new(sx2 - sy2, anti[0][1]),
            anti_sp_sz: Complex64::new(anti[0][2], anti[1][2]),
            anti_sx_sy: anti[0][1],
        }
    }
}

/// Draws `k` Bloch vectors uniformly in the unit ball and flat-Dirichlet
/// weights.
pub fn sample_separable(
    n_qubits: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(SeparableEnsemble, CollectiveMoments)> {
    if k < 1 {
        return Err(Error::domain("need at least one ensemble member"));
    }
    let mut bloch_vectors = Vec::with_capacity(k);
    let mut raw_weights = Vec::with_capacity(k);
    for _ in 0..k {
        let dir: [f64; 3] = UnitSphere.sample(rng);
        let radius = rng.random::<f64>().cbrt();
        bloch_vectors.push([dir[0] * radius, dir[1] * radius, dir[2] * radius]);
        let w: f64 = Exp1.sample(rng);
        raw_weights.push(w);
    }
    let total: f64 = raw_weights.iter().sum();
    let mut weights: Vec<f64> = raw_weights.iter().map(|w| w / total).collect();
    // Absorb rounding so the weights sum to 1 to the last bit available.
    let drift = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    let ensemble = SeparableEnsemble::new(n_qubits, weights, bloch_vectors)?;
    let moments = ensemble.moments();
    Ok((ensemble, moments))
}

/// Seeded convenience wrapper around [`sample_separable`].
pub fn sample_separable_seeded(
    n_qubits: usize,
    k: usize,
    seed: u64,
) -> Result<(SeparableEnsemble, CollectiveMoments)> {
    sample_separable(n_qubits, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Closed-form one-axis twisting moments from `|0⟩_J`, with `μ̄ = 2μt`:
///
/// ```text
/// ⟨Sx²⟩ = N/4
/// ⟨Sy²⟩ = (N² + N - N(N-1) cos^{N-2} μ̄) / 8
/// ⟨Sz²⟩ = (N² + N + N(N-1) cos^{N-2} μ̄) / 8
/// ```
pub fn one_axis_analytic_moments(n_qubits: usize, mu: f64, t: f64) -> Result<OneAxisMoments> {
    if n_qubits < 2 {
        return Err(Error::domain("N must be at least 2"));
    }
    let n = n_qubits as f64;
    let cos_pow = (2.0 * mu * t).cos().powi(n_qubits as i32 - 2);
    let sx2 = n / 4.0;
    let sy2 = (n * n + n - n * (n - 1.0) * cos_pow) / 8.0;
    let sz2 = (n * n + n + n * (n - 1.0) * cos_pow) / 8.0;
    Ok(OneAxisMoments {
        sx2,
        sy2,
        sz2,
        sp2_re: sz2 - n * n / 4.0,
    })
}

/// Haar-like random symmetric state: i.i.d. complex Gaussian amplitudes.
pub fn random_symmetric_state(n_qubits: usize, rng: &mut impl Rng) -> SymmetricState {
    random_state_with_support(n_qubits, rng, |_| true)
}

/// Random state supported only on even (`parity = 0`) or odd (`parity = 1`)
/// excitation numbers.
pub fn random_parity_state(n_qubits: usize, parity: usize, rng: &mut impl Rng) -> SymmetricState {
    random_state_with_support(n_qubits, rng, |n| n % 2 == parity % 2)
}

fn random_state_with_support(
    n_qubits: usize,
    rng: &mut impl Rng,
    keep: impl Fn(usize) -> bool,
) -> SymmetricState {
    let amps: Vec<Complex64> = (0..=n_qubits)
        .map(|n| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            if keep(n) {
                Complex64::new(re, im)
            } else {
                ZERO
            }
        })
        .collect();
    crate::dicke::make_state(n_qubits, &amps)
        .expect("Gaussian amplitudes are nonzero with probability one")
        .0
}
