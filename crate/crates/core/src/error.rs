use thiserror::Error;

/// Failures raised by the numerical kernels.
///
/// Every variant carries enough context to say which factor or parameter
/// tripped; the CLI maps all of them to exit status 3.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("branch cut: {0}")]
    Branch(String),
    #[error("truncation: {what}: tail estimate {tail:e} exceeds bound {bound:e}")]
    Truncation { what: String, tail: f64, bound: f64 },
    #[error("singular matrix in factor {factor} (condition estimate {condition:e})")]
    Singular { factor: String, condition: f64 },
    #[error("range error: {0}")]
    Range(String),
    #[error("too few usable samples: {usable} of {requested}")]
    Samples { usable: usize, requested: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
