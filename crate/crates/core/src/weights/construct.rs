use num_traits::{One, Zero};

use crate::lattice::{certify_integral_positive_definite, LatticeMinimum};
use crate::{Rational, RationalMatrix};

use super::{Permutation, PermutationAction, WeightError};

/// A symmetric matrix certified to satisfy `x W x^t >= 1` on `Z^l \ {0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    matrix: RationalMatrix,
    certificate: LatticeMinimum,
    provenance: String,
}

impl WeightMatrix {
    /// Certifies `matrix`; fails unless it is symmetric with lattice minimum `>= 1`.
    pub fn certified(matrix: RationalMatrix, provenance: impl Into<String>) -> Result<Self, WeightError> {
        let provenance = provenance.into();
        let cert = certify_integral_positive_definite(&matrix)?;
        if cert.symmetrized {
            return Err(WeightError::Domain(format!("{provenance}: weight matrix must be symmetric")));
        }
        match (cert.integral_positive_definite, cert.minimum) {
            (true, Some(certificate)) => Ok(WeightMatrix { matrix, certificate, provenance }),
            _ => Err(WeightError::NotIntegralPositiveDefinite { provenance, failure: cert.failure }),
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn certificate(&self) -> &LatticeMinimum {
        &self.certificate
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// True if `W P = P W` for the permutation matrix of every group element.
    pub fn commutes_with(&self, action: &PermutationAction) -> bool {
        action.elements().iter().all(|g| commutes(&self.matrix, g))
    }
}

pub(crate) fn commutes(w: &RationalMatrix, perm: &Permutation) -> bool {
    let p: RationalMatrix = perm.matrix();
    w.mul(&p).ok() == p.mul(w).ok()
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// The tridiagonal matrix with `1` on the diagonal and `-1/2` beside it.
pub fn u_matrix(n: usize) -> Result<WeightMatrix, WeightError> {
    if n == 0 {
        return Err(WeightError::Domain("U_n needs n >= 1".into()));
    }
    let m = RationalMatrix::from_fn(n, n, |r, c| match r.abs_diff(c) {
        0 => Rational::one(),
        1 => -half(),
        _ => Rational::zero(),
    });
    WeightMatrix::certified(m, format!("U_{n}"))
}

/// `U_n` with rows and columns relabelled along `order`, so that
/// `x W x^t = Σ x_{o(i)}^2 - Σ x_{o(i)} x_{o(i+1)}`. `order` is 0-based.
pub fn u_matrix_ordered(order: &[usize]) -> Result<WeightMatrix, WeightError> {
    let n = order.len();
    let perm = Permutation::from_images(order.to_vec())?;
    let u = u_matrix(n)?;
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(perm.apply(i), perm.apply(j))] = u.matrix()[(i, j)].clone();
        }
    }
    let label: Vec<String> = perm.to_one_based().iter().map(|i| i.to_string()).collect();
    WeightMatrix::certified(m, format!("U_{n}[{}]", label.join(",")))
}

/// Block tridiagonal `m x m` arrangement of `W`: diagonal blocks `W`,
/// super-diagonal blocks `-PW/2`, sub-diagonal blocks `-P^t W/2`.
///
/// `P` must commute with `W`. The result is recertified.
pub fn blowup_wm(w: &WeightMatrix, perm: &Permutation, m: usize) -> Result<WeightMatrix, WeightError> {
    if m == 0 {
        return Err(WeightError::Domain("block count must be at least 1".into()));
    }
    let n = w.dim();
    if perm.degree() != n {
        return Err(WeightError::Domain(format!("permutation of degree {} for W of size {n}", perm.degree())));
    }
    if !commutes(w.matrix(), perm) {
        return Err(WeightError::NonCommuting);
    }
    let p: RationalMatrix = perm.matrix();
    let upper = p.mul(w.matrix())?.scale(&-half());
    let lower = p.transpose().mul(w.matrix())?.scale(&-half());
    let out = RationalMatrix::from_fn(m * n, m * n, |r, c| {
        let (bi, bj) = (r / n, c / n);
        let (i, j) = (r % n, c % n);
        if bi == bj {
            w.matrix()[(i, j)].clone()
        } else if bj == bi + 1 {
            upper[(i, j)].clone()
        } else if bi == bj + 1 {
            lower[(i, j)].clone()
        } else {
            Rational::zero()
        }
    });
    WeightMatrix::certified(out, format!("W_{m}({})", w.provenance()))
}

/// `(1/2n) Σ_δ P_δ (W + W^t) P_δ^t` over the elements of `action`.
///
/// The result commutes with every `P_δ`, and `tr(result * C) = tr(W C)` for
/// any `C` commuting with the action.
pub fn symmetrize(w: &RationalMatrix, action: &PermutationAction) -> Result<WeightMatrix, WeightError> {
    if !w.is_square() || w.rows() != action.degree() {
        return Err(WeightError::Domain(format!(
            "W of shape {:?} vs action of degree {}",
            w.shape(),
            action.degree()
        )));
    }
    let s = w.add(&w.transpose())?;
    let mut acc = RationalMatrix::zeros(w.rows(), w.cols());
    for g in action.elements() {
        let p: RationalMatrix = g.matrix();
        acc = acc.add(&p.mul(&s)?.mul(&p.transpose())?)?;
    }
    let factor = Rational::new(1.into(), (2 * action.order()).into());
    WeightMatrix::certified(acc.scale(&factor), "symmetrized")
}

/// An integral quadratic form `Σ_{i<=j} q_ij x_i x_j` on `l` variables,
/// with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    dim: usize,
    terms: Vec<(usize, usize, i64)>,
}

impl QuadraticForm {
    pub fn new(dim: usize, terms: Vec<(usize, usize, i64)>) -> Result<Self, WeightError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, _) in &terms {
            if i < 1 || i > j || j > dim {
                return Err(WeightError::Domain(format!("term ({i}, {j}) needs 1 <= i <= j <= {dim}")));
            }
            if !seen.insert((i, j)) {
                return Err(WeightError::Domain(format!("term ({i}, {j}) given twice")));
            }
        }
        Ok(QuadraticForm { dim, terms })
    }

    /// `Σ x_i^2`.
    pub fn unit(dim: usize) -> Self {
        QuadraticForm { dim, terms: (1..=dim).map(|i| (i, i, 1)).collect() }
    }

    /// `Σ x_i^2 - Σ x_i x_{i+1}`.
    pub fn wada(dim: usize) -> Self {
        let mut terms: Vec<_> = (1..=dim).map(|i| (i, i, 1)).collect();
        terms.extend((1..dim).map(|i| (i, i + 1, -1)));
        QuadraticForm { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(usize, usize, i64)] {
        &self.terms
    }

    /// Symmetric matrix `W` with `x W x^t = q(x)`.
    pub fn matrix(&self) -> RationalMatrix {
        let mut w = RationalMatrix::zeros(self.dim, self.dim);
        for &(i, j, q) in &self.terms {
            let q = Rational::from_integer(q.into());
            if i == j {
                w[(i - 1, i - 1)] = q;
            } else {
                w[(i - 1, j - 1)] = &q * half();
                w[(j - 1, i - 1)] = q * half();
            }
        }
        w
    }

    pub fn evaluate(&self, x: &[i64]) -> i64 {
        self.terms.iter().map(|&(i, j, q)| q * x[i - 1] * x[j - 1]).sum()
    }
}

/// The weight matrix `W_ii = q_ii`, `W_ij = W_ji = q_ij / 2`.
pub fn from_quadratic_form(form: &QuadraticForm) -> Result<WeightMatrix, WeightError> {
    WeightMatrix::certified(form.matrix(), "quadratic form")
}
