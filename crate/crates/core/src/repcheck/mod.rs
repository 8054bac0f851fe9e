//! Evidence from representations: the image of the generators in the
//! 3-dimensional evaluation module of `U_q(a_2^(1))`, and the vanishing
//! pattern of the generating polynomial on the eigenvalue ladder.

mod matrix;
mod relation;
mod rep;
mod spectral;

pub use matrix::Mat3;
pub use relation::{
    check_relation_matrix, check_relation_matrix_with, delta_at, sample_params, Branch, MatrixCheckOptions, MatrixReport,
    PointReport, DEFAULT_MAX_RANK,
};
pub use rep::{build_evaluation_rep, calibrate_rho, rational_sqrt, EvaluationRep, ParamsDocument, RepParams, RhoCalibration};
pub use spectral::{
    allowed_offsets, derive_spectral_rho, offsets_with_rho, spectral_polynomial_check, spectral_polynomial_check_with,
    OffsetCheck, SpectralError, SpectralParams, SpectralReport,
};

use crate::coeffs::CoeffError;
use crate::qcoeff::QError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("self-validation failed: {0}")]
    SelfValidation(String),
    #[error("nodes {i} and {j} are not linked")]
    NotLinked { i: usize, j: usize },
    #[error("no scalar rho makes the defining relation hold for nodes {i}, {j}")]
    NoScalar { i: usize, j: usize },
    #[error("rank {r} outside 1..={max}")]
    RankOutOfRange { r: usize, max: usize },
    #[error("table has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Scalar(#[from] QError),
}
