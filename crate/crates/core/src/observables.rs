//! Everything reported for a single state along a trajectory.

use num_complex::Complex64;

use crate::dicke::{collective_moments, CollectiveMoments, SymmetricState};
use crate::error::{Error, Result};
use crate::pairwise::{
    concurrence, prop3_residual, reduced_two_qubit, ConcurrenceResult, TwoQubitReduced,
};
use crate::squeezing::{
    squeezing_even_odd, squeezing_general, squeezing_lower_bound, MEAN_SPIN_THRESHOLD,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointObservables {
    pub moments: CollectiveMoments,
    /// Closed-form ξ²; `None` when the state has transverse mean spin.
    pub xi2_closed: Option<f64>,
    /// Minimal-perpendicular-variance ξ²; `None` when the mean spin is degenerate.
    pub xi2_general: Option<f64>,
    pub xi2_lower_bound: f64,
    pub mean_spin_norm: f64,
    pub reduced: TwoQubitReduced,
    pub concurrence: ConcurrenceResult,
}

impl PointObservables {
    pub fn from_state(state: &SymmetricState) -> Result<Self> {
        Self::from_moments(&collective_moments(state))
    }

    pub fn from_moments(m: &CollectiveMoments) -> Result<Self> {
        let xi2_closed = match squeezing_even_odd(m) {
            Ok(r) => Some(r.xi2),
            Err(Error::NotEvenOdd { .. }) => None,
            Err(e) => return Err(e),
        };
        let xi2_general = match squeezing_general(m) {
            Ok(r) => Some(r.xi2),
            Err(Error::DegenerateDirection { .. }) => None,
            Err(e) => return Err(e),
        };
        let reduced = reduced_two_qubit(m)?;
        Ok(Self {
            moments: *m,
            xi2_closed,
            xi2_general,
            xi2_lower_bound: squeezing_lower_bound(m),
            mean_spin_norm: m.mean_spin_norm(),
            reduced,
            concurrence: concurrence(&reduced)?,
        })
    }

    pub fn degenerate(&self) -> bool {
        self.mean_spin_norm < MEAN_SPIN_THRESHOLD
    }

    /// ξ² used for reporting: the closed form when it applies.
    pub fn xi2(&self) -> f64 {
        self.xi2_closed.or(self.xi2_general).unwrap_or(f64::NAN)
    }

    pub fn prop3_residual(&self) -> f64 {
        prop3_residual(
            self.xi2(),
            self.concurrence.concurrence,
            self.moments.n_qubits,
        )
        .unwrap_or(f64::NAN)
    }

    pub fn sp2(&self) -> Complex64 {
        self.moments.sp2
    }
}
