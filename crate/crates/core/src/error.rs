use thiserror::Error;

use crate::certificate::Certificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A builder refused its input because a required property failed.
    /// The certificate, when present, indicts the offending input.
    #[error("precondition failed: {msg}")]
    Precondition {
        msg: String,
        certificate: Option<Box<Certificate>>,
    },

    #[error("search refused: estimated magnitude {estimate:.1} exceeds guard {guard:.1} (use force to override)")]
    GuardExceeded { estimate: f64, guard: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>, certificate: Option<Certificate>) -> Self {
        Error::Precondition {
            msg: msg.into(),
            certificate: certificate.map(Box::new),
        }
    }
}
