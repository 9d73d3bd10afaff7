use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Rational, RationalMatrix};

use super::{Matrix, MatrixError};

/// On-disk form of a matrix: `{"rows": r, "cols": c, "entries": [["1", "-1/2"], ...]}`.
///
/// Entries are integers or `a/b` in lowest terms with `b > 1`; anything else
/// is rejected so that load/store round-trips bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixRecord {
    pub fn to_matrix(&self) -> Result<RationalMatrix, MatrixError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(MatrixError::EntryCount {
                rows: self.rows,
                cols: self.cols,
                found: self.entries.iter().map(Vec::len).sum(),
            });
        }
        let data = self.entries.iter().flatten().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Matrix::from_vec(self.rows, self.cols, data)
    }
}

impl From<&RationalMatrix> for MatrixRecord {
    fn from(m: &RationalMatrix) -> Self {
        MatrixRecord {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.iter_rows().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_canonical_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign { s.strip_prefix('-').unwrap_or(s) } else { s };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if digits == "0" && digits.len() != s.len() {
        return None; // "-0"
    }
    s.parse().ok()
}

pub fn parse_rational(s: &str) -> Result<Rational, MatrixError> {
    let err = || MatrixError::Parse(s.to_string());
    match s.split_once('/') {
        None => parse_canonical_int(s, true).map(Rational::from_integer).ok_or_else(err),
        Some((n, d)) => {
            let n = parse_canonical_int(n, true).ok_or_else(err)?;
            let d = parse_canonical_int(d, false).ok_or_else(err)?;
            if d <= BigInt::one() || n.is_zero() || !n.abs().gcd(&d).is_one() {
                return Err(err());
            }
            Ok(Rational::new_raw(n, d))
        }
    }
}
