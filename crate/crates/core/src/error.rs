use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: String, limit: usize },
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("function is not injective")]
    NonInjective,
    #[error("resonant time: sin(lambda*T) vanishes for lambda = {lambda}")]
    Resonant { lambda: f64 },
    #[error("integration unstable: spectral drift {drift:e} at t = {time}")]
    Unstable { drift: f64, time: f64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
