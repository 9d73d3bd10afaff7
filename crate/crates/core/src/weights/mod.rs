//! Weight matrices `W` with `x W x^t >= 1` for all nonzero integer `x`.
//!
//! Every constructor certifies its output through [`crate::lattice`], even
//! when the construction is known to preserve the property; a failed
//! certification is reported as an error rather than trusted away.

mod candidates;
mod construct;
mod perm;

use thiserror::Error;

use crate::exactmat::MatrixError;
use crate::lattice::{CertificationFailure, LatticeError};

pub use candidates::{best_hamiltonian_path, weight_candidates, Candidate};
pub use construct::{
    blowup_wm, from_quadratic_form, symmetrize, u_matrix, u_matrix_ordered, QuadraticForm, WeightMatrix,
};
pub use perm::{Permutation, PermutationAction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("{0}")]
    Domain(String),
    #[error("permutation matrix does not commute with W")]
    NonCommuting,
    #[error("{provenance} is not integral positive definite: {failure:?}")]
    NotIntegralPositiveDefinite { provenance: String, failure: Option<CertificationFailure> },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
