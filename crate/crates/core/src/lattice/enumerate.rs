use std::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

use super::lll::lll_reduce;
use super::{EnumerationConfig, GramForm, LatticeError, LatticeMinimum};

/// `G = U^t D U` with `U` unit upper triangular.
struct Ldl {
    d: Vec<Rational>,
    u: Vec<Vec<Rational>>,
}

fn ldl(g: &[Vec<Rational>]) -> Ldl {
    let n = g.len();
    let mut d = vec![Rational::zero(); n];
    let mut u = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= &u[k][i] * &u[k][i] * &d[k];
        }
        d[i] = di;
        u[i][i] = Rational::from_integer(1.into());
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s -= &u[k][i] * &u[k][j] * &d[k];
            }
            u[i][j] = s / &d[i];
        }
    }
    Ldl { d, u }
}

/// Integers `x` with `(x - center)^2 <= bound`, as an inclusive range.
fn integer_window(center: &Rational, bound: &Rational) -> Option<(BigInt, BigInt)> {
    if bound.is_negative() {
        return None;
    }
    let a = center.numer();
    let b = center.denom();
    let scaled = (bound * Rational::from_integer(b * b)).floor().to_integer();
    let w = scaled.sqrt();
    let lo = (a - &w).div_ceil(b);
    let hi = (a + &w).div_floor(b);
    (lo <= hi).then_some((lo, hi))
}

struct Search<'a> {
    ldl: &'a Ldl,
    best: Rational,
    minimizers: Vec<Vec<BigInt>>,
    x: Vec<BigInt>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, partial: Rational, zero_above: bool) {
        let n = self.x.len();
        let mut center = Rational::zero();
        for j in i + 1..n {
            center -= &self.ldl.u[i][j] * Rational::from_integer(self.x[j].clone());
        }
        let room = (&self.best - &partial) / &self.ldl.d[i];
        let Some((mut lo, hi)) = integer_window(&center, &room) else { return };
        // enumerate each +-x pair once: the last nonzero coordinate is positive
        if zero_above && lo.is_negative() {
            lo = BigInt::zero();
        }
        let mut xi = lo;
        while xi <= hi {
            let off = Rational::from_integer(xi.clone()) - &center;
            let value = &partial + &self.ldl.d[i] * &off * &off;
            if value <= self.best {
                self.x[i] = xi.clone();
                if i == 0 {
                    if !self.x.iter().all(Zero::is_zero) {
                        if value < self.best {
                            self.best = value;
                            self.minimizers.clear();
                        }
                        self.minimizers.push(self.x.clone());
                    }
                } else {
                    self.run(i - 1, value, zero_above && xi.is_zero());
                }
            }
            xi += 1;
        }
        self.x[i] = BigInt::zero();
    }
}

fn normalise_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

pub fn form_minimum(g: &GramForm) -> Result<LatticeMinimum, LatticeError> {
    form_minimum_with(g, &EnumerationConfig::default())
}

/// Exact minimum of `x G x^t` over nonzero integer vectors.
pub fn form_minimum_with(g: &GramForm, config: &EnumerationConfig) -> Result<LatticeMinimum, LatticeError> {
    let n = g.dim();
    if n == 0 {
        return Err(LatticeError::EmptyDimension);
    }
    if n > config.max_dim {
        return Err(LatticeError::DimensionCap { dim: n, cap: config.max_dim });
    }
    let red = lll_reduce(g);
    let rows: Vec<Vec<Rational>> = red.reduced.iter_rows().map(<[Rational]>::to_vec).collect();
    let ldl = ldl(&rows);
    let start = (0..n).map(|i| rows[i][i].clone()).min().expect("n > 0");
    let mut search = Search { ldl: &ldl, best: start, minimizers: Vec::new(), x: vec![BigInt::zero(); n] };
    search.run(n - 1, Rational::zero(), true);

    let mut candidates: Vec<Vec<BigInt>> = search
        .minimizers
        .iter()
        .map(|x| {
            let y = (0..n)
                .map(|r| (0..n).map(|c| &red.transform[(r, c)] * &x[c]).sum::<BigInt>())
                .collect();
            normalise_sign(y)
        })
        .collect();
    for y in &candidates {
        assert_eq!(g.evaluate(y), search.best, "enumerated value disagrees with the exact form");
    }
    let minimizer_count = candidates.len();
    candidates.sort_by_key(|y| (y.iter().map(|v| v.abs()).sum::<BigInt>(), Reverse(y.clone())));
    let witness = candidates.into_iter().next().expect("a basis vector always attains the start radius");
    Ok(LatticeMinimum { value: search.best, witness, minimizer_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RationalMatrix;

    fn gram(rows: Vec<Vec<i64>>) -> GramForm {
        GramForm::new(crate::Matrix::from_rows(rows).unwrap().map(|&x: &i64| Rational::from_integer(x.into())))
            .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    /// All integer vectors in the box `|x_i| <= b`, evaluated exactly.
    fn brute_force(g: &GramForm, b: i64) -> Rational {
        let n = g.dim();
        let mut best: Option<Rational> = None;
        let mut x = vec![-b; n];
        loop {
            if x.iter().any(|&v| v != 0) {
                let val = g.evaluate(&ints(&x));
                if best.as_ref().is_none_or(|b| val < *b) {
                    best = Some(val);
                }
            }
            let mut i = 0;
            while i < n && x[i] == b {
                x[i] = -b;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        best.unwrap()
    }

    #[test]
    fn identity_minimum_is_one_at_e1() {
        let m = form_minimum(&gram(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).unwrap();
        assert_eq!(m.value, Rational::from_integer(1.into()));
        assert_eq!(m.witness, ints(&[1, 0, 0]));
        assert_eq!(m.minimizer_count, 3);
    }

    #[test]
    fn inverse_of_ones_plus_identity() {
        let c = RationalMatrix::from_fn(3, 3, |r, c| Rational::from_integer((1 + (r == c) as i64).into()));
        let g = GramForm::new(c.inverse().unwrap()).unwrap();
        let m = form_minimum(&g).unwrap();
        assert_eq!(m.value, Rational::new(3.into(), 4.into()));
        assert_eq!(brute_force(&g, 3), m.value);
        assert_eq!(m.witness, ints(&[1, 0, 0]));
        assert_eq!(g.evaluate(&ints(&[1, 1, 1])), m.value);
        // e1, e2, e3 and (1,1,1)
        assert_eq!(m.minimizer_count, 4);
    }

    #[test]
    fn window_is_exact() {
        let (lo, hi) = integer_window(&Rational::new(1.into(), 2.into()), &Rational::new(1.into(), 4.into())).unwrap();
        assert_eq!((lo, hi), (0.into(), 1.into()));
        assert!(integer_window(&Rational::new(1.into(), 2.into()), &Rational::new(1.into(), 5.into())).is_none());
    }

    #[test]
    fn skewed_forms_match_brute_force() {
        for rows in [
            vec![vec![5, 4], vec![4, 5]],
            vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]],
            vec![vec![7, 3, -2], vec![3, 6, 1], vec![-2, 1, 9]],
        ] {
            let g = gram(rows);
            assert_eq!(form_minimum(&g).unwrap().value, brute_force(&g, 4));
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let g = GramForm::new(RationalMatrix::identity(5)).unwrap();
        let err = form_minimum_with(&g, &EnumerationConfig { max_dim: 4 }).unwrap_err();
        assert_eq!(err, LatticeError::DimensionCap { dim: 5, cap: 4 });
    }
}
