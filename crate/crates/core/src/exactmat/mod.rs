//! Exact dense linear algebra.
//!
//! [`Matrix`] is generic over any [`Scalar`](crate::Scalar); the crate works
//! almost exclusively with [`RationalMatrix`](crate::RationalMatrix) and
//! [`IntMatrix`](crate::IntMatrix).

mod cartan;
mod elim;
mod matrix;
mod record;
mod snf;

use thiserror::Error;

pub use cartan::CartanData;
pub use elim::DefinitenessFailure;
pub use matrix::Matrix;
pub use record::{format_rational, parse_rational, MatrixRecord};
pub use snf::{elementary_divisors, smith_diagonal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix dimensions must be positive")]
    Empty,
    #[error("rows have different lengths")]
    Ragged,
    #[error("expected {rows}x{cols} = {} entries, found {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row}, {col}) is not an integer")]
    NonInteger { row: usize, col: usize },
    #[error("invalid rational literal {0:?}")]
    Parse(String),
    #[error("invalid Cartan matrix: {0}")]
    Cartan(String),
}
