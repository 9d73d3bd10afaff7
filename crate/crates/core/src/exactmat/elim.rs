//! Fraction-free (Bareiss) elimination.
//!
//! Every intermediate entry produced here is a minor of the input, so over the
//! integers all divisions are exact and over the rationals denominators never
//! grow beyond those of the input minors.

use crate::scalar::{Field, Scalar};

use super::{Matrix, MatrixError};

/// Why a matrix failed the positive-definiteness test.
#[derive(Clone, Debug, PartialEq)]
pub enum DefinitenessFailure<T> {
    NotSquare((usize, usize)),
    NotSymmetric { row: usize, col: usize },
    /// The leading principal minor of the given order is `<= 0`.
    NonpositiveMinor { order: usize, value: T },
}

impl<T: Scalar> Matrix<T> {
    /// Exact determinant by Bareiss elimination with row pivoting.
    pub fn determinant(&self) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.shape()));
        }
        let n = self.rows();
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(k, k)].clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over the fraction field of `T`.
    pub fn rank(&self) -> usize {
        let (rows, cols) = self.shape();
        let mut a = self.clone();
        let mut prev = T::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    let v = (a[(rank, col)].clone() * a[(i, j)].clone()
                        - a[(i, col)].clone() * a[(rank, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, col)] = T::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        rank
    }

    /// Fraction-free Gauss–Jordan elimination on `(A | I)`.
    ///
    /// Returns `(d, M)` with `A * M = d * I`, where `d = ±det(A)` is the last
    /// pivot. Over an integral domain `M` is integral; `A^{-1} = M / d`.
    pub fn fraction_free_inverse(&self) -> Result<(T, Self), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.shape()));
        }
        let n = self.rows();
        let mut aug = Matrix::hconcat(&[self.clone(), Self::identity(n)])?;
        let mut prev = T::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !aug[(r, k)].is_zero()).ok_or(MatrixError::Singular)?;
            aug.swap_rows(k, p);
            let pivot = aug[(k, k)].clone();
            for i in (0..n).filter(|&i| i != k) {
                let factor = aug[(i, k)].clone();
                for j in (0..2 * n).filter(|&j| j != k) {
                    let v = (pivot.clone() * aug[(i, j)].clone() - factor.clone() * aug[(k, j)].clone())
                        / prev.clone();
                    aug[(i, j)] = v;
                }
                aug[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok((prev, aug.select(&rows, &cols)?))
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1, 2, ...`,
    /// stopping after the first zero.
    pub fn leading_principal_minors(&self) -> Result<Vec<T>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.shape()));
        }
        let n = self.rows();
        let mut a = self.clone();
        let mut prev = T::one();
        let mut minors = Vec::with_capacity(n);
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            minors.push(pivot.clone());
            if pivot.is_zero() {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (pivot.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
            }
            prev = pivot;
        }
        Ok(minors)
    }

    /// `None` if the matrix is symmetric with all leading principal minors
    /// positive; otherwise the first violation found.
    pub fn definiteness_failure(&self) -> Option<DefinitenessFailure<T>> {
        if !self.is_square() {
            return Some(DefinitenessFailure::NotSquare(self.shape()));
        }
        for r in 0..self.rows() {
            for c in r + 1..self.cols() {
                if self[(r, c)] != self[(c, r)] {
                    return Some(DefinitenessFailure::NotSymmetric { row: r, col: c });
                }
            }
        }
        let minors = self.leading_principal_minors().ok()?;
        minors
            .into_iter()
            .enumerate()
            .find(|(_, m)| m.is_zero() || m.is_negative_value())
            .map(|(k, value)| DefinitenessFailure::NonpositiveMinor { order: k + 1, value })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.definiteness_failure().is_none()
    }
}

impl<T: Field> Matrix<T> {
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let (d, m) = self.fraction_free_inverse()?;
        Ok(m.map(|x| x.clone() / d.clone()))
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::{IntMatrix, Rational, RationalMatrix};

    fn q(rows: Vec<Vec<i64>>) -> RationalMatrix {
        Matrix::from_rows(rows).unwrap().map(|&x| Rational::from_integer(x.into()))
    }

    fn ones_plus_identity(n: usize) -> RationalMatrix {
        RationalMatrix::from_fn(n, n, |r, c| Rational::from_integer(BigInt::from(1 + (r == c) as i64)))
    }

    /// Cofactor expansion, used as an independent determinant oracle.
    fn cofactor_det(a: &Matrix<i64>) -> i64 {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)];
        }
        (0..n)
            .map(|c| {
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * a[(0, c)] * cofactor_det(&a.select(&rows, &cols).unwrap())
            })
            .sum()
    }

    #[test]
    fn determinants() {
        assert_eq!(RationalMatrix::identity(4).determinant().unwrap(), Rational::from_integer(1.into()));
        assert_eq!(q(vec![vec![2, 1], vec![1, 2]]).determinant().unwrap(), Rational::from_integer(3.into()));
        let j3 = Matrix::from_fn(3, 3, |r, c| 1 + (r == c) as i64);
        assert_eq!(cofactor_det(&j3), 4);
        assert_eq!(ones_plus_identity(3).determinant().unwrap(), Rational::from_integer(4.into()));
        // pivoting path
        assert_eq!(q(vec![vec![0, 1], vec![1, 0]]).determinant().unwrap(), Rational::from_integer((-1).into()));
        assert!(q(vec![vec![1, 2], vec![2, 4]]).determinant().unwrap() == Rational::from_integer(0.into()));
    }

    #[test]
    fn inverse_of_ones_plus_identity() {
        let inv = ones_plus_identity(3).inverse().unwrap();
        let quarter = Rational::new(1.into(), 4.into());
        let expected = RationalMatrix::from_fn(3, 3, |r, c| {
            let id = if r == c { Rational::from_integer(1.into()) } else { Rational::from_integer(0.into()) };
            id - quarter.clone()
        });
        assert_eq!(inv, expected);
        assert_eq!(ones_plus_identity(3).mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(RationalMatrix::identity(3).inverse().unwrap(), RationalMatrix::identity(3));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        assert!(matches!(q(vec![vec![1, 2], vec![2, 4]]).inverse(), Err(MatrixError::Singular)));
    }

    #[test]
    fn integer_fraction_free_inverse_stays_integral() {
        let a = IntMatrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(4)],
        ])
        .unwrap();
        let (d, m) = a.fraction_free_inverse().unwrap();
        assert_eq!(a.mul(&m).unwrap(), IntMatrix::identity(3).scale(&d));
        assert_eq!(d, a.determinant().unwrap());
    }

    #[test]
    fn positive_definiteness() {
        assert!(RationalMatrix::identity(2).is_positive_definite());
        assert_eq!(
            q(vec![vec![1, 2], vec![2, 1]]).definiteness_failure(),
            Some(DefinitenessFailure::NonpositiveMinor { order: 2, value: Rational::from_integer((-3).into()) })
        );
        assert!(matches!(
            q(vec![vec![1, 2], vec![0, 1]]).definiteness_failure(),
            Some(DefinitenessFailure::NotSymmetric { row: 0, col: 1 })
        ));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let a = Matrix::from_rows(vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::<i64>::identity(4).rank(), 4);
        assert_eq!(Matrix::<i64>::zeros(2, 3).rank(), 0);
    }
}
