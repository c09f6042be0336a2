use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("non-finite state")]
    NonFiniteState,
    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("grid mismatch between states")]
    GridMismatch,
    #[error("grid too narrow: edge amplitude {edge:e} exceeds {limit:e}")]
    GridTooNarrow { edge: f64, limit: f64 },
    #[error("{name} = {value} outside domain {domain}")]
    Domain { name: &'static str, value: f64, domain: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("length protocol reaches λ ≤ 0 at t = {t}")]
    NonPositiveLength { t: f64 },
    #[error("norm drift {drift:e} at t = {t} exceeds tolerance")]
    NormDrift { t: f64, drift: f64 },
    #[error("quadrature failed to reach tolerance (estimate {estimate:e})")]
    Quadrature { estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
