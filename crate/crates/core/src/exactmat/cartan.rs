use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{is_prime, pow};
use crate::{IntMatrix, Rational, RationalMatrix};

use super::snf::{smith_diagonal, to_integer_matrix};
use super::MatrixError;

/// A validated Cartan matrix: symmetric, nonnegative integral, positive
/// definite, together with the characteristic `p` and optionally the defect.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData {
    matrix: RationalMatrix,
    p: u64,
    defect: Option<u32>,
}

impl CartanData {
    pub fn new(matrix: RationalMatrix, p: u64, defect: Option<u32>) -> Result<Self, MatrixError> {
        if !is_prime(p) {
            return Err(MatrixError::Cartan(format!("{p} is not a prime")));
        }
        let ints = to_integer_matrix(&matrix)?;
        if ints.entries().iter().any(Signed::is_negative) {
            return Err(MatrixError::Cartan("entries must be nonnegative".into()));
        }
        if let Some(failure) = matrix.definiteness_failure() {
            return Err(MatrixError::Cartan(format!("not symmetric positive definite: {failure:?}")));
        }
        if let Some(d) = defect {
            let largest = smith_diagonal(&ints).pop().unwrap_or_default();
            let expected = BigInt::from(pow(p, d));
            if largest != expected {
                return Err(MatrixError::Cartan(format!(
                    "largest elementary divisor {largest} differs from p^d = {expected}"
                )));
            }
        }
        Ok(CartanData { matrix, p, defect })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, p: u64, defect: Option<u32>) -> Result<Self, MatrixError> {
        let m = crate::Matrix::from_rows(rows)?.map(|&x: &i64| Rational::from_integer(x.into()));
        Self::new(m, p, defect)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn int_matrix(&self) -> IntMatrix {
        self.matrix.map(|x| x.to_integer())
    }

    pub fn l(&self) -> usize {
        self.matrix.rows()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn defect(&self) -> Option<u32> {
        self.defect
    }

    /// Largest elementary divisor; `p^d` for a genuine Cartan matrix.
    pub fn largest_elementary_divisor(&self) -> BigInt {
        smith_diagonal(&self.int_matrix()).pop().unwrap_or_default()
    }

    /// The matrix divided by `q`, e.g. the dominated block's Cartan matrix
    /// from that of `b`. Fails if the quotient is not integral.
    pub fn divided_by(&self, q: u64) -> Result<Self, MatrixError> {
        let q = Rational::from_integer(q.into());
        if q.is_zero() {
            return Err(MatrixError::Cartan("division by zero".into()));
        }
        let m = self.matrix.map(|x| x / &q);
        Self::new(m, self.p, None)
    }

    pub fn multiplied_by(&self, q: u64) -> Result<Self, MatrixError> {
        let m = self.matrix.scale(&Rational::from_integer(q.into()));
        Self::new(m, self.p, None)
    }

    pub fn with_defect(self, defect: u32) -> Result<Self, MatrixError> {
        Self::new(self.matrix, self.p, Some(defect))
    }
}
