use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{IntMatrix, RationalMatrix};

use super::MatrixError;

/// Nonzero diagonal of the Smith normal form, `d1 | d2 | ... | dr`, all positive.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = m.iter_rows().map(<[BigInt]>::to_vec).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r0, c0), &(r1, c1)| a[r0][c0].abs().cmp(&a[r1][c1].abs()));
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    // enforce the divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Elementary divisors of a nonsingular square integer matrix.
pub fn elementary_divisors(m: &RationalMatrix) -> Result<Vec<BigInt>, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.shape()));
    }
    let ints = to_integer_matrix(m)?;
    let diag = smith_diagonal(&ints);
    if diag.len() < m.rows() {
        return Err(MatrixError::Singular);
    }
    Ok(diag)
}

pub(crate) fn to_integer_matrix(m: &RationalMatrix) -> Result<IntMatrix, MatrixError> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_integer() {
                return Err(MatrixError::NonInteger { row: r, col: c });
            }
        }
    }
    Ok(m.map(|x| x.to_integer()))
}
