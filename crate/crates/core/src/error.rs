use std::io;

use num_complex::Complex64;
use thiserror::Error;

use crate::runge::ApproximationFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} lies outside the domain")]
    OutOfDomain(Complex64),

    #[error("evaluation of f_{index} failed at {point}: {reason}")]
    Evaluation {
        index: usize,
        point: Complex64,
        reason: String,
    },

    #[error("approximation failed{}: {failure}", j.map(|j| format!(" for j = {j}")).unwrap_or_default())]
    Approximation {
        j: Option<usize>,
        failure: Box<ApproximationFailure>,
    },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
