use thiserror::Error;

/// Errors produced while parsing germs or computing invariants.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("not a germ: component {component} has nonzero constant term {value}")]
    NotGerm { component: usize, value: f64 },
    #[error("corank error: differential has rank {rank}, expected {expected}")]
    Corank { rank: usize, expected: usize },
    #[error("unsupported dimensions n={n}, k={k}; supported: n=2 with any k>=1, n=3 with k=1 or k=2")]
    Unsupported { n: usize, k: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("infinite tangent parameter")]
    InfiniteParam,
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("curve is singular at the origin")]
    SingularCurve,
    #[error("no critical value: {0}")]
    NoCriticalValue(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
