use thiserror::Error;

use crate::algebra::Signature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("element is not invertible (determinant {det:e})")]
    Singular { det: f64 },

    #[error("not a square root of -1: |a^2 + 1| = {residual:e}")]
    NotARoot { residual: f64 },

    #[error("parameters off the root manifold: beta^2 = {beta_sq:e} < 0")]
    OffManifold { beta_sq: f64 },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unsupported format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}
