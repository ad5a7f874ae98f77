//! Kitagawa–Ueda squeezing parameter `ξ² = 4 min(ΔS⊥)² / N`.

use std::f64::consts::PI;

use crate::dicke::CollectiveMoments;
use crate::error::{Error, Result};

/// Mean spin magnitudes below this leave the perpendicular plane undefined.
pub const MEAN_SPIN_THRESHOLD: f64 = 1e-8;
/// Transverse means allowed for the even/odd closed form.
pub const EVEN_ODD_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezingMethod {
    General,
    EvenOddClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingResult {
    pub xi2: f64,
    /// Angle of `n_perp` within the perpendicular frame, in `[0, 2π)`.
    pub optimal_angle: f64,
    pub n_perp: [f64; 3],
    pub mean_spin: [f64; 3],
    pub method: SqueezingMethod,
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Orthonormal pair spanning the plane perpendicular to `mean_spin`.
pub fn perpendicular_frame(mean_spin: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let dir = normalize(mean_spin);
    let z_cross = cross([0.0, 0.0, 1.0], dir);
    let transverse = (z_cross[0] * z_cross[0] + z_cross[1] * z_cross[1]).sqrt();
    let n1 = if transverse > 1e-8 {
        normalize(z_cross)
    } else {
        [1.0, 0.0, 0.0]
    };
    let n2 = normalize(cross(dir, n1));
    (n1, n2)
}

/// Minimizing angle of `a cos²θ + b sin²θ + 2c sinθ cosθ`; zero on ties.
fn minimizing_angle(g11: f64, g22: f64, g12: f64) -> f64 {
    let diff = g11 - g22;
    if diff == 0.0 && g12 == 0.0 {
        return 0.0;
    }
    let two_theta = PI + (2.0 * g12).atan2(diff);
    (0.5 * two_theta).rem_euclid(2.0 * PI)
}

/// ξ² from the minimal variance in the plane perpendicular to the mean spin.
pub fn squeezing_general(m: &CollectiveMoments) -> Result<SqueezingResult> {
    let mean_spin = m.mean_spin();
    let norm = m.mean_spin_norm();
    if !(norm >= MEAN_SPIN_THRESHOLD) {
        return Err(Error::DegenerateDirection { norm });
    }
    let (n1, n2) = perpendicular_frame(mean_spin);
    let g11 = m.second_moment_along(n1);
    let g22 = m.second_moment_along(n2);
    let g12 = m.second_moment_between(n1, n2);
    let lambda_min = 0.5 * (g11 + g22 - ((g11 - g22).powi(2) + 4.0 * g12 * g12).sqrt());
    let theta = minimizing_angle(g11, g22, g12);
    let (s, c) = theta.sin_cos();
    let n_perp = [
        c * n1[0] + s * n2[0],
        c * n1[1] + s * n2[1],
        c * n1[2] + s * n2[2],
    ];
    Ok(SqueezingResult {
        xi2: 4.0 * lambda_min / m.n_qubits as f64,
        optimal_angle: theta,
        n_perp,
        mean_spin,
        method: SqueezingMethod::General,
    })
}

/// Closed form for states with vanishing transverse means:
/// `ξ² = 1 + N/2 - (2/N)(⟨Sz²⟩ + |⟨S₊²⟩|)`.
///
/// Unlike [`squeezing_general`] this stays defined when `⟨Sz⟩ = 0`.
pub fn squeezing_even_odd(m: &CollectiveMoments) -> Result<SqueezingResult> {
    let residual = m.mean_sx.abs().max(m.mean_sy.abs()).max(m.sp_mean.norm());
    if !(residual <= EVEN_ODD_THRESHOLD) {
        return Err(Error::NotEvenOdd { residual });
    }
    let nq = m.n_qubits as f64;
    let xi2 = 1.0 + nq / 2.0 - 2.0 / nq * (m.sz2 + m.sp2.norm());
    // In the (x, y) frame the 2×2 variance matrix has g11 - g22 = Re⟨S₊²⟩ and
    // 2 g12 = Im⟨S₊²⟩, so the minimizer satisfies 2θ = π + arg⟨S₊²⟩.
    let theta = minimizing_angle(m.sp2.re, 0.0, 0.5 * m.sp2.im);
    Ok(SqueezingResult {
        xi2,
        optimal_angle: theta,
        n_perp: [theta.cos(), theta.sin(), 0.0],
        mean_spin: m.mean_spin(),
        method: SqueezingMethod::EvenOddClosedForm,
    })
}

/// `1 - (2/N)|⟨S₊²⟩|`, a lower bound on the even/odd ξ².
pub fn squeezing_lower_bound(m: &CollectiveMoments) -> f64 {
    1.0 - 2.0 / m.n_qubits as f64 * m.sp2.norm()
}

/// `ξ² = 1 + (N-1)⟨σᵢ⊥ ⊗ σⱼ⊥⟩`.
pub fn squeezing_from_correlation(corr: f64, n_qubits: usize) -> Result<f64> {
    if n_qubits < 2 {
        return Err(Error::domain("pair correlation needs N >= 2"));
    }
    if !(-1.0..=1.0).contains(&corr) {
        return Err(Error::domain(format!("correlation {corr} outside [-1, 1]")));
    }
    Ok(1.0 + (n_qubits as f64 - 1.0) * corr)
}
