//! Generalized decomposition matrices over `Z[ζ_q]`, their splitting into
//! integer coefficient matrices, and verification of the identities they
//! satisfy.

mod cyclotomic;
mod fixtures;
mod split;
mod verify;

use thiserror::Error;

use crate::bounds::BoundsError;
use crate::exactmat::MatrixError;

pub use cyclotomic::{basis_len, check_conductor, iprime, trace_of_power, CyclotomicInteger};
pub use fixtures::{twisted_product, TwistedProduct};
pub use split::{fourier_split, CycMatrix, GenDecData};
pub use verify::{
    c_tilde, height_zero_valuation_check, longeq_indicator, rank_check, valuation_checks, verify_all,
    verify_longeq, verify_orthogonality, Check, VerificationReport,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GendecError {
    #[error("{0}")]
    Domain(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
