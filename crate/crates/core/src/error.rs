use thiserror::Error;

use crate::family::FamilyPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid Weyl index (n={n}, m={m}) for d={d}")]
    InvalidWeylIndex { n: usize, m: usize, d: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("{0} is not a state (pyramid margin {1:e})")]
    NotAState(FamilyPoint, f64),

    #[error("{0} is not PPT (smallest partial-transpose eigenvalue {1:e})")]
    NotPpt(FamilyPoint, f64),

    #[error("lambda = 1 is the limit of the line; use c_limit instead")]
    LambdaAtLimit,

    #[error("operator lies outside the Weyl tensor span (residual {0:e})")]
    NotInSpan(f64),

    #[error("line never yields a certified witness: {0}")]
    NeverFeasible(String),

    #[error("feasibility is not monotone in lambda near {lambda}: {detail}")]
    MonotonicityViolated { lambda: f64, detail: String },

    #[error("{0} is not on the boundary plane alpha = 7 beta / 2 + 1 - gamma")]
    OffBoundaryPlane(FamilyPoint),

    #[error("grid is empty: {0}")]
    EmptyGrid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
