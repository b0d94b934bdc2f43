use thiserror::Error;

/// Errors raised by the numerical-range toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("support oracle failed in direction {direction:?}: {source}")]
    Oracle {
        direction: Vec<f64>,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
