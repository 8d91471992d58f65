use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the supported envelope")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("no element of order {d} in GF({q}): order unavailable in this field")]
    OrderUnavailable { d: u64, q: u64 },
    #[error("cannot embed GF({from}) into GF({to})")]
    IncompatibleEmbedding { from: u64, to: u64 },
    #[error("{what} too large: {size} exceeds limit {limit}")]
    LimitExceeded { what: &'static str, size: u128, limit: u128 },
    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
