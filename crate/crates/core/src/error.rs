use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty vector or matrix")]
    Empty,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("unbounded interval where a bounded one is required")]
    Unbounded,

    #[error("overflow while computing {0}")]
    Overflow(&'static str),

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("SVD did not converge after {sweeps} sweeps (off-diagonal measure {off:e})")]
    SvdNoConvergence { sweeps: usize, off: f64 },

    #[error("matrix too far from orthogonal: ||I - Q'Q||_inf <= {eta} is not < 1")]
    NotNearOrthogonal { eta: f64 },

    #[error("no k <= {kmax} with Perron root of |A^k| below {threshold}; matrix is out of regime")]
    KNotFound { kmax: usize, threshold: f64 },

    #[error("no shift/scale pair found for the requested matrix class: {0}")]
    OutOfRegime(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
