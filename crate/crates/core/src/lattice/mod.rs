//! Exact minima of positive definite quadratic forms over `Z^n \ {0}`.
//!
//! The pipeline is: validate the Gram matrix, precondition it with an LLL
//! reduction driven by floating point (the transform and reduced Gram matrix
//! are tracked exactly), then run Fincke–Pohst enumeration in exact rational
//! arithmetic. Floating point never decides a reported value.

mod certify;
mod enumerate;
mod lll;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactmat::{DefinitenessFailure, MatrixError};
use crate::{Rational, RationalMatrix};

pub use certify::{certify_integral_positive_definite, Certificate, CertificationFailure};
pub use enumerate::{form_minimum, form_minimum_with};
pub use lll::{lll_reduce, LllReduction};

/// Default largest dimension accepted by the enumerator.
pub const DEFAULT_MAX_DIM: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("quadratic form has dimension 0")]
    EmptyDimension,
    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("Gram matrix is not positive definite: {0:?}")]
    NotPositiveDefinite(DefinitenessFailure<Rational>),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_dim: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { max_dim: DEFAULT_MAX_DIM }
    }
}

/// A symmetric positive definite rational Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    matrix: RationalMatrix,
}

impl GramForm {
    pub fn new(matrix: RationalMatrix) -> Result<Self, LatticeError> {
        if let Some(f) = matrix.definiteness_failure() {
            return Err(LatticeError::NotPositiveDefinite(f));
        }
        Ok(GramForm { matrix })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `x G x^t` for an integer vector.
    pub fn evaluate(&self, x: &[BigInt]) -> Rational {
        let xs: Vec<Rational> = x.iter().cloned().map(Rational::from_integer).collect();
        self.matrix.bilinear(&xs, &xs).expect("vector length matches dimension")
    }
}

/// The minimum of a form together with a witness.
///
/// The witness is sign-normalised (first nonzero coordinate positive). Among
/// all minimisers the one with the smallest 1-norm is chosen, ties going to
/// the lexicographically largest vector, so `e1` is preferred over `e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMinimum {
    pub value: Rational,
    pub witness: Vec<BigInt>,
    /// Number of minimisers up to sign.
    pub minimizer_count: usize,
}
