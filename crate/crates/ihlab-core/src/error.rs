use thiserror::Error;

/// Crate-wide error type. Preconditions that callers can violate surface as
/// values; internal invariant breaks panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entry ({row},{col}) outside {rows}x{cols}")]
    IndexOutOfBounds { row: u32, col: u32, rows: usize, cols: usize },

    #[error("entries from different fields: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(i64),

    #[error("vector is not in the cycle space: {0}")]
    NotACycle(String),

    #[error("chain is not allowable: simplex {simplex} fails at face {face} in stratum {stratum}: {detail}")]
    NotAllowable { simplex: String, face: String, stratum: String, detail: String },

    #[error("perversity condition failed at stratum {stratum}: {detail}")]
    PerversityCondition { stratum: String, detail: String },

    #[error("complex is not valid: {0}")]
    InvalidComplex(String),

    #[error("unknown space name: {0}")]
    UnknownSpace(String),

    #[error("unknown perversity name: {0}")]
    UnknownPerversity(String),

    #[error("top stratum is not orientable; odd flip cycle: {0:?}")]
    NotOrientable(Vec<String>),

    #[error("cross product matrix is singular in degree {degree}: {detail}")]
    KunnethFailure { degree: usize, detail: String },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("{0}")]
    Json(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
