use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::{IntMatrix, Rational, RationalMatrix};

use super::GramForm;

const DELTA: f64 = 0.75;
// slightly above 1/2 so that float noise cannot make size reduction cycle
const ETA: f64 = 0.501;

/// Result of [`lll_reduce`]: `reduced = transform^t * G * transform`.
#[derive(Clone, Debug, PartialEq)]
pub struct LllReduction {
    /// Unimodular; its columns are the reduced basis in original coordinates.
    pub transform: IntMatrix,
    pub reduced: RationalMatrix,
}

struct State {
    n: usize,
    basis: Vec<Vec<BigInt>>, // basis[k] = column k of the transform
    gram: Vec<Vec<Rational>>,
}

impl State {
    fn float_gso(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let n = self.n;
        let g: Vec<Vec<f64>> =
            self.gram.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect()).collect();
        let mut mu = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for i in 0..n {
            for j in 0..i {
                let s: f64 = (0..j).map(|k| mu[j][k] * mu[i][k] * b[k]).sum();
                mu[i][j] = (g[i][j] - s) / b[j];
            }
            b[i] = g[i][i] - (0..i).map(|k| mu[i][k] * mu[i][k] * b[k]).sum::<f64>();
        }
        (mu, b)
    }

    /// basis[k] -= r * basis[j], with the Gram matrix updated exactly.
    fn reduce(&mut self, k: usize, j: usize, r: &BigInt) {
        for idx in 0..self.n {
            let v = &self.basis[k][idx] - r * &self.basis[j][idx];
            self.basis[k][idx] = v;
        }
        let rq = Rational::from_integer(r.clone());
        for i in 0..self.n {
            let v = &self.gram[i][k] - &rq * &self.gram[i][j];
            self.gram[i][k] = v;
        }
        for i in 0..self.n {
            let v = &self.gram[k][i] - &rq * &self.gram[j][i];
            self.gram[k][i] = v;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.basis.swap(a, b);
        self.gram.swap(a, b);
        for row in &mut self.gram {
            row.swap(a, b);
        }
    }
}

/// LLL reduction (`delta = 3/4`) of a positive definite Gram matrix.
///
/// Gram–Schmidt data is computed in `f64` from the exact Gram matrix at each
/// step; basis updates are exact, and the returned Gram matrix is recomputed
/// as `T^t G T` from scratch.
pub fn lll_reduce(g: &GramForm) -> LllReduction {
    let n = g.dim();
    let mut st = State {
        n,
        basis: (0..n).map(|k| (0..n).map(|i| BigInt::from((i == k) as i32)).collect()).collect(),
        gram: g.matrix().iter_rows().map(<[Rational]>::to_vec).collect(),
    };
    let max_steps = 1000 * n * n + 100;
    let mut k = 1;
    let mut steps = 0;
    while k < n && steps < max_steps {
        steps += 1;
        let (mut mu, _) = st.float_gso();
        for j in (0..k).rev() {
            if mu[k][j].abs() > ETA {
                let r = mu[k][j].round();
                let rb = BigInt::from(r as i64);
                if rb.is_zero() {
                    continue;
                }
                st.reduce(k, j, &rb);
                for l in 0..j {
                    mu[k][l] -= r * mu[j][l];
                }
                mu[k][j] -= r;
            }
        }
        let (mu, b) = st.float_gso();
        if b[k] < (DELTA - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            st.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    let transform = IntMatrix::from_fn(n, n, |r, c| st.basis[c][r].clone());
    let t = transform.map(|x| Rational::from_integer(x.clone()));
    let reduced = t.transpose().mul(g.matrix()).and_then(|m| m.mul(&t)).expect("square shapes agree");
    debug_assert!(reduced.entries().iter().zip(st.gram.iter().flatten()).all(|(a, b)| a == b));
    LllReduction { transform, reduced }
}
