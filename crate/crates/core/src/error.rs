use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String },

    #[error("element index {index} out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("operands live on different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("target matrix {index} is not unitary (residual {residual:.3e})")]
    NonUnitaryTarget { index: usize, residual: f64 },

    #[error("irrep set incomplete: sum of squared dimensions {sum} != group order {order}")]
    IncompleteIrrepSet { sum: usize, order: usize },

    #[error("linear system ill-conditioned (condition number {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("eigendecomposition failed: residual {residual:.3e} exceeds tolerance")]
    EigenFailure { residual: f64 },

    #[error("matrix is not a density state: {reason}")]
    InvalidState { reason: String },

    #[error("function is not of positive type (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("positive-type function has rank zero")]
    RankZero,

    #[error("function is not compatible with the representation (residual {residual:.3e})")]
    Incompatible { residual: f64 },

    #[error("compatibility of the sampled function could not be verified (residual {residual:.3e})")]
    CompatibilityUnverified { residual: f64 },

    #[error("source family is not a tomogram: {reason}")]
    SourceNotTomogram { reason: String },

    #[error("values must be finite (found NaN or infinity at index {index})")]
    NonFiniteValue { index: usize },

    #[error("spin too large: 2j = {two_j} exceeds supported maximum {max}")]
    SpinTooLarge { two_j: i64, max: i64 },

    #[error("quadrature grid insufficient: certified 2j = {certified}, required {required} (residual {residual:.3e})")]
    GridOrderInsufficient {
        certified: i64,
        required: i64,
        residual: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
