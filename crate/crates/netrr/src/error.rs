use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("modulus must be monic of degree m with coefficients in [0, p)")]
    BadModulus,
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("field size {q} exceeds the configured cap {cap} (set NETRR_MAX_Q to override)")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("element code {code} out of range for field of order {q}")]
    CodeOutOfRange { code: u64, q: u64 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported curve family or size: {0}")]
    UnsupportedCurve(String),
    #[error("subset size {s} exceeds point count {n}")]
    SubsetTooLarge { s: usize, n: usize },
    #[error("{count} subsets exceeds the cap {cap} (use sampling or set NETRR_SUBSET_CAP)")]
    SubsetCapExceeded { count: u128, cap: u128 },
    #[error("code is degenerate: fewer than two distinct codewords")]
    DegenerateCode,
    #[error("cannot delete {sigma} dimensions from a {dim}-dimensional space")]
    TooManyDeletions { sigma: usize, dim: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
