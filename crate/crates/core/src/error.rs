use thiserror::Error;

use crate::bounds::BoundsError;
use crate::exactmat::MatrixError;
use crate::gendec::GendecError;
use crate::io::FormatError;
use crate::lattice::LatticeError;
use crate::weights::WeightError;

/// Crate-wide error: each variant wraps the originating module's error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Gendec(#[from] GendecError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
