use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Dunkl factorial undefined: factor [{n}]_mu = {factor} is not positive")]
    Domain { n: usize, factor: f64 },

    #[error(
        "coherent-state tail did not decay below {tail_tol:e} by n = {n_max_hard}; \
         alpha = {alpha} is too large for this truncation policy"
    )]
    Truncation {
        alpha: f64,
        tail_tol: f64,
        n_max_hard: usize,
    },

    #[error("hamiltonian is not diagonal: off-diagonal mass {mass:e} exceeds {tol:e}")]
    NonDiagonal { mass: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid time grid: {0}")]
    Grid(String),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
