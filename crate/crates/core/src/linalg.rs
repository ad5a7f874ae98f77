//! Small dense complex linear algebra: Hermitian matrices, a cyclic Jacobi
//! eigensolver and a one-sided Jacobi singular-value routine.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const MAX_SWEEPS: usize = 64;

/// Dense square matrix stored row-major. Hermiticity is checked by
/// [`HermitianMatrix::hermiticity_residual`], not enforced on every write.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Builds from row-major entries, rejecting non-Hermitian input.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::domain("entry count does not match dimension"));
        }
        let m = Self { dim, entries };
        let residual = m.hermiticity_residual();
        if residual > 1e-12 {
            return Err(Error::numerical("matrix is not Hermitian", residual));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] += value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `max |H_ij - conj(H_ji)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `⟨v|H|v⟩`, real for Hermitian `H`.
    pub fn expectation(&self, v: &[Complex64]) -> f64 {
        let hv = self.mul_vec(v);
        v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

/// Rotation `G = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]` that zeroes the off-diagonal
/// entry of the Hermitian 2×2 block `[[app, apq], [conj(apq), aqq]]` under
/// `G† A G`. Returned as `[g11, g12, g21, g22]`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> [Complex64; 4] {
    let abs = apq.norm();
    let phase_conj = (apq / abs).conj();
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        phase_conj * -s,
        phase_conj * c,
    ]
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the row-major matrix whose
/// columns are the matching orthonormal eigenvectors. The sweep order is
/// fixed, so identical input gives bit-identical output.
pub fn hermitian_jacobi(h: &HermitianMatrix) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let n = h.dim();
    let residual = h.hermiticity_residual();
    if residual > 1e-12 * h.frobenius_norm().max(1.0) {
        return Err(Error::numerical("input is not Hermitian", residual));
    }
    if h.entries()
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::domain("matrix has non-finite entries"));
    }

    let mut a = h.entries().to_vec();
    // Symmetrize so that rounding in the input does not bias the result.
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[i * n + j] + a[j * n + i].conj());
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let scale = h.frobenius_norm();
    let tol = f64::EPSILON * scale;
    let mut converged = n <= 1 || scale == 0.0;
    let mut off = 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let [g11, g12, g21, g22] = jacobi_rotation(app, aqq, apq);

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * g11 + akq * g21;
                    a[k * n + q] = akp * g12 + akq * g22;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = g11.conj() * apk + g21.conj() * aqk;
                    a[q * n + k] = g12.conj() * apk + g22.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * g11 + vkq * g21;
                    v[k * n + q] = vkp * g12 + vkq * g22;
                }
            }
        }
        off = off_diagonal_norm(&a, n);
        converged = off <= tol;
    }
    if !converged {
        return Err(Error::numerical("Jacobi eigensolver did not converge", off));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = vec![ZERO; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[row * n + src];
        }
    }
    Ok((eigenvalues, vectors))
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Singular values (descending) of a small complex matrix with `rows × cols`
/// row-major storage, by one-sided Jacobi orthogonalization of the columns.
///
/// Small singular values come out with absolute error of order
/// `ε·‖B‖`, which squaring-based routes through `B†B` cannot offer.
pub fn singular_values(b: &[Complex64], rows: usize, cols: usize) -> Result<Vec<f64>> {
    assert_eq!(b.len(), rows * cols);
    let mut columns: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| b[i * cols + j]).collect())
        .collect();

    let mut converged = cols <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        converged = true;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: f64 = columns[p].iter().map(|c| c.norm_sqr()).sum();
                let beta: f64 = columns[q].iter().map(|c| c.norm_sqr()).sum();
                let gamma: Complex64 = columns[p]
                    .iter()
                    .zip(&columns[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt()
                    || gamma.norm() <= f64::MIN_POSITIVE
                {
                    continue;
                }
                converged = false;
                let [g11, g12, g21, g22] = jacobi_rotation(alpha, beta, gamma);
                for k in 0..rows {
                    let x = columns[p][k];
                    let y = columns[q][k];
                    columns[p][k] = x * g11 + y * g21;
                    columns[q][k] = x * g12 + y * g22;
                }
            }
        }
    }
    if !converged {
        return Err(Error::numerical(
            "one-sided Jacobi did not converge",
            f64::NAN,
        ));
    }
    let mut values: Vec<f64> = columns
        .iter()
        .map(|col| col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Reconstruction residual `max |V diag(E) V† - H|`.
pub fn reconstruction_residual(
    h: &HermitianMatrix,
    eigenvalues: &[f64],
    vectors: &[Complex64],
) -> f64 {
    let n = h.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += vectors[i * n + k] * eigenvalues[k] * vectors[j * n + k].conj();
            }
            worst = worst.max((acc - h.get(i, j)).norm());
        }
    }
    worst
}

/// `max |V†V - I|`.
pub fn orthonormality_residual(vectors: &[Complex64], n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += vectors[k * n + i].conj() * vectors[k * n + j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = HermitianMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(rng.random_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    #[test]
    fn diagonal_input() {
        let h = HermitianMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let (e, v) = hermitian_jacobi(&h).unwrap();
        assert_eq!(e, vec![1.0, 2.0, 3.0]);
        assert!(orthonormality_residual(&v, 3) == 0.0);
    }

    #[test]
    fn random_dim_50_contract() {
        let h = random_hermitian(50, 11);
        let (e, v) = hermitian_jacobi(&h).unwrap();
        assert!(reconstruction_residual(&h, &e, &v) <= 1e-10);
        assert!(orthonormality_residual(&v, 50) <= 1e-11);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn deterministic() {
        let h = random_hermitian(17, 3);
        assert_eq!(hermitian_jacobi(&h).unwrap(), hermitian_jacobi(&h).unwrap());
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = HermitianMatrix::zeros(2);
        h.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(hermitian_jacobi(&h).is_err());
        assert!(HermitianMatrix::from_row_major(2, h.entries().to_vec()).is_err());
    }

    #[test]
    fn singular_values_of_known_matrix() {
        // diag(3, 4i) times a unitary permutation has singular values 4, 3.
        let b = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 4.0),
            Complex64::new(0.0, 0.0),
        ];
        let s = singular_values(&b, 2, 2).unwrap();
        assert!((s[0] - 4.0).abs() < 1e-15 && (s[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn singular_values_match_eigenvalues_for_psd() {
        let h = random_hermitian(4, 5);
        let (_, v) = hermitian_jacobi(&h).unwrap();
        // B = V diag(1,2,3,4) V† is Hermitian PSD; singular values = eigenvalues.
        let d = [1.0, 2.0, 3.0, 4.0];
        let mut b = vec![ZERO; 16];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    b[i * 4 + j] += v[i * 4 + k] * d[k] * v[j * 4 + k].conj();
                }
            }
        }
        let s = singular_values(&b, 4, 4).unwrap();
        for (got, want) in s.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }
}
