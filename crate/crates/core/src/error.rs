use thiserror::Error;

/// Errors surfaced by the engine. Everything else (NaN parameters, empty
/// grids, ...) is rejected up front by config validation.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("config error: {0}")]
    Config(String),

    /// An outgoing photon would be evanescent: v|k'| = E - nu_l <= 0.
    #[error("closed channel: outgoing energy {energy:.6e} in the {channel} channel is not propagating")]
    ClosedChannel { channel: &'static str, energy: f64 },

    /// The oracle needs a finite delay; a zero-delay model has no two-point
    /// real-space structure to solve.
    #[error("oracle requires tau > 0 (got {0:.6e})")]
    OracleZeroDelay(f64),

    /// The oracle's boundary-matching system failed to factorize or left a
    /// residual above tolerance.
    #[error("oracle linear system unusable: {0}")]
    SingularSystem(String),

    #[error("optimizer box is empty: {0}")]
    EmptyBox(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
