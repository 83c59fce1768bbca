use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("linkage error: {0}")]
    Linkage(String),
    #[error("degree-sum violation at node {node}: children sum to {children}, expected {expected}")]
    DegreeSumViolation {
        node: String,
        children: u64,
        expected: u64,
    },
    #[error("uncertified tree: {0}")]
    Uncertified(String),
    #[error("unknown node id {0:?}")]
    UnknownNode(String),
    #[error("matrix is not invertible modulo {modulus}: {matrix}")]
    NonInvertible { modulus: u64, matrix: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("an odd prime is required, got {0}")]
    OddPrimeRequired(u64),
    #[error("cannot reduce modulo {target} from modulus {source_modulus}")]
    BadReduction { target: u64, source_modulus: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
