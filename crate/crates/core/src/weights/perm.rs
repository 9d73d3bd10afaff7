use std::collections::BTreeSet;

use crate::scalar::Scalar;
use crate::Matrix;

use super::WeightError;

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, WeightError> {
        let n = images.len();
        let distinct: BTreeSet<_> = images.iter().copied().collect();
        if distinct.len() != n || images.iter().any(|&i| i >= n) {
            return Err(WeightError::Domain(format!("{images:?} is not a permutation")));
        }
        Ok(Permutation(images))
    }

    /// Image array with entries in `1..=n`, as used in the file formats.
    pub fn from_one_based(images: &[usize]) -> Result<Self, WeightError> {
        if images.contains(&0) {
            return Err(WeightError::Domain(format!("{images:?} is not a 1-based permutation")));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Permutation matrix with a one at `(π(c), c)` for each column `c`,
    /// so that `P_π P_ρ = P_{π∘ρ}` and `tr(M P_π) = Σ_c M[c][π(c)]`.
    pub fn matrix<T: Scalar>(&self) -> Matrix<T> {
        let n = self.degree();
        Matrix::from_fn(n, n, |r, c| if self.0[c] == r { T::one() } else { T::zero() })
    }
}

/// A permutation group given by generators, with all elements enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationAction {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationAction {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, WeightError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(WeightError::Domain(format!("generator {g:?} does not have degree {degree}")));
        }
        let mut seen = BTreeSet::from([Permutation::identity(degree)]);
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(PermutationAction { degree, generators, elements: seen.into_iter().collect() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationAction { degree, generators: Vec::new(), elements: vec![Permutation::identity(degree)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Every group element, sorted, identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}
