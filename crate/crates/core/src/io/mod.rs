//! JSON record formats, report rendering and the built-in fixtures.

mod fixtures;
mod records;
mod render;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::BoundsError;
use crate::exactmat::MatrixError;
use crate::gendec::GendecError;
use crate::lattice::LatticeError;
use crate::weights::WeightError;

pub use fixtures::{fixture, fixture_names, FIXTURES};
pub use records::{
    BundleRecord, CartanRecord, FormRecord, GendecInput, GendecRecord, GramEntry, GramRecord, LoadedBundle,
    NormalizationTag, QMatrixRecord, SpecRecord,
};
pub use render::{
    comparison_record, comparison_table, decimal, lattice_record, lattice_table, verification_record,
    verification_table, weight_record, weight_table,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
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
}

impl FormatError {
    pub(crate) fn field(field: impl Into<String>, message: impl ToString) -> Self {
        FormatError::Field { field: field.into(), message: message.to_string() }
    }
}

/// Parses a JSON record, reporting the position of any syntax or schema error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_string();
        FormatError::Parse { line: e.line(), column: e.column(), message }
    })
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}
