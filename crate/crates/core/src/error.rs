use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// Invalid configuration: grid sizes, periods, paddings, dimensions.
    #[error("configuration error: {0}")]
    Config(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A frequency of the observable is too close to a resonance of the
    /// coboundary equation: the divisor e^{2πi δ k·s} − 1 is below the floor
    /// while k·s ≠ 0.
    #[error("near-resonant frequency k = {freq:?}: {detail}")]
    Resonance { freq: Vec<i64>, detail: String },

    /// Quadrature failed to converge at the panel cap. Both of the last two
    /// iterates are reported so the caller can decide what to do.
    #[error("quadrature did not converge: last = ({last_re:e}, {last_im:e}), previous = ({prev_re:e}, {prev_im:e})")]
    NonConvergence {
        last_re: f64,
        last_im: f64,
        prev_re: f64,
        prev_im: f64,
    },
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CoreError::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        CoreError::Domain(msg.into())
    }
}
