//! Upper bounds on `k(B)` and `k0(B)` and a report comparing them.
//!
//! All values are exact rationals. Each [`BoundReport`] also carries
//! `floor(value)` since the counts are integers.

mod classical;
mod compare;
mod formulas;
mod report;
mod subsection;

use thiserror::Error;

use crate::exactmat::MatrixError;
use crate::lattice::LatticeError;
use crate::weights::WeightError;

pub use classical::{classical_bounds, kw_bound, validate_ordering, validate_partition};
pub use compare::{best_weight, compare_all, BlockData, Comparison, ConjectureCheck};
pub use formulas::{
    brauer_5d_bound, dade_cross_check, dade_proposition_bound, dominated_cartan, hks_bound, refined_bound,
    theorem_a_bound, theorem_b_bound, Normalization,
};
pub use report::{BoundReport, Target};
pub use subsection::{k0_semidirect, SubsectionSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
