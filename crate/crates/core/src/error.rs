use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantum numbers (n={n}, l={l}, m={m}): {reason}")]
    InvalidState {
        n: i64,
        l: i64,
        m: i64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported quadrature: {0}")]
    UnsupportedQuadrature(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("quantum defect {defect} too large for n = {n} (n - defect must be positive)")]
    DefectTooLarge { n: u32, defect: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for usage/domain problems,
    /// 3 for numerical non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence(_) => 3,
            _ => 2,
        }
    }
}
