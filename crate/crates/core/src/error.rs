use thiserror::Error;

use crate::lattice::BlowupContext;

#[derive(Debug, Error)]
pub enum Error {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(BlowupContext, BlowupContext),
    #[error("operation is only defined on surfaces (n = 2), got n = {0}")]
    NotSurface(u32),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("expected an integer class, got {0}")]
    NonInteger(String),
    #[error("binomial virtual dimension needs nonnegative multiplicities")]
    NegativeMultiplicity,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("linear system is singular")]
    Singular,
    #[error("r = {r} is not below 2^n for n = {n}")]
    OutsideRegime { n: u32, r: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid prime {0}: {1}")]
    Prime(u64, String),
    #[error("point configuration: {0}")]
    Points(String),
    #[error("elliptic curve construction: {0}")]
    Curve(String),
    #[error("nef screening failed: {0}")]
    Screening(String),
    #[error("example mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
