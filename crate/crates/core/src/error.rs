use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The mean spin is too small to define a perpendicular plane.
    #[error("mean spin |<S>| = {norm:e} is below the degeneracy threshold")]
    DegenerateDirection { norm: f64 },

    /// Transverse means are not zero, so the even/odd closed form does not apply.
    #[error("state is not even/odd: transverse mean magnitude {residual:e}")]
    NotEvenOdd { residual: f64 },

    /// The reduced matrix has coherences outside the X pattern.
    #[error("reduced matrix is not X-shaped: |x±| = {residual:e}")]
    NotXForm { residual: f64 },

    #[error("numerical error: {message} (residual {residual:e})")]
    Numerical { message: String, residual: f64 },

    #[error("capacity exceeded: {what} supports N <= {max}, got {got}")]
    Capacity {
        what: &'static str,
        max: usize,
        got: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>, residual: f64) -> Self {
        Error::Numerical {
            message: msg.into(),
            residual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
