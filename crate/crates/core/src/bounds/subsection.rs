use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::arith::{gcd, is_prime, modulo, prime_power_exponent, split_part};
use crate::weights::{Permutation, PermutationAction};
use crate::{Rational, RationalMatrix};

use super::BoundsError;

/// The subsection data `(p, q, 𝒩)` with an optional permutation action of
/// `𝒩` on the Brauer characters of `b`.
///
/// `𝒩` is stored as the full list of its elements, as residues mod `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsectionSpec {
    p: u64,
    q: u64,
    generators: Vec<u64>,
    elements: Vec<u64>,
    ibr: Option<IbrAction>,
}

#[derive(Clone, Debug, PartialEq)]
struct IbrAction {
    action: PermutationAction,
    images: BTreeMap<u64, Permutation>,
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

impl SubsectionSpec {
    /// `generators` are integers coprime to `p`, reduced mod `q`.
    pub fn new(p: u64, q: u64, generators: &[i64]) -> Result<Self, BoundsError> {
        if !is_prime(p) {
            return Err(BoundsError::Domain(format!("{p} is not a prime")));
        }
        if prime_power_exponent(q, p).is_none() {
            return Err(BoundsError::Domain(format!("q = {q} is not a power of {p}")));
        }
        let mut reduced = Vec::with_capacity(generators.len());
        for &g in generators {
            if gcd(modulo(g, p), p) != 1 {
                return Err(BoundsError::Domain(format!("generator {g} is not a unit mod {q}")));
            }
            reduced.push(if q == 1 { 0 } else { modulo(g, q) });
        }
        let one = if q == 1 { 0 } else { 1 };
        let mut seen = BTreeSet::from([one]);
        let mut queue = VecDeque::from([one]);
        while let Some(x) = queue.pop_front() {
            for &g in &reduced {
                let y = if q == 1 { 0 } else { mul_mod(x, g, q) };
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(SubsectionSpec { p, q, generators: reduced, elements: seen.into_iter().collect(), ibr: None })
    }

    /// The trivial group `𝒩 = 1`.
    pub fn trivial(p: u64, q: u64) -> Result<Self, BoundsError> {
        Self::new(p, q, &[])
    }

    /// `𝒩` generated by the smallest unit of multiplicative order `n`.
    pub fn cyclic_of_order(p: u64, q: u64, n: u64) -> Result<Self, BoundsError> {
        if n == 1 {
            return Self::trivial(p, q);
        }
        let g = (2..q)
            .filter(|&g| g % p != 0)
            .find(|&g| unit_order(g, q) == n)
            .ok_or_else(|| BoundsError::Domain(format!("no unit of order {n} mod {q}")))?;
        Self::new(p, q, &[g as i64])
    }

    /// Attaches the permutation of `IBr(b)` induced by each generator.
    ///
    /// Fails unless the assignment extends to a homomorphism on `𝒩`.
    pub fn with_ibr_action(mut self, perms: Vec<Permutation>) -> Result<Self, BoundsError> {
        if perms.len() != self.generators.len() {
            return Err(BoundsError::Domain(format!(
                "{} permutations for {} generators",
                perms.len(),
                self.generators.len()
            )));
        }
        let Some(degree) = perms.first().map(Permutation::degree) else {
            return Err(BoundsError::Domain("an action of the trivial group needs a degree; use with_trivial_action".into()));
        };
        let action = PermutationAction::new(degree, perms.clone()).map_err(|e| BoundsError::Domain(e.to_string()))?;
        let one = self.elements[0];
        let mut images = BTreeMap::from([(one, Permutation::identity(degree))]);
        let mut queue = VecDeque::from([one]);
        while let Some(x) = queue.pop_front() {
            let px = images[&x].clone();
            for (&g, pg) in self.generators.iter().zip(&perms) {
                let y = if self.q == 1 { 0 } else { mul_mod(x, g, self.q) };
                let py = px.compose(pg);
                match images.get(&y) {
                    Some(existing) if *existing != py => {
                        return Err(BoundsError::Domain(format!(
                            "the permutations do not define an action of 𝒩: element {y} gets two images"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        images.insert(y, py);
                        queue.push_back(y);
                    }
                }
            }
        }
        self.ibr = Some(IbrAction { action, images });
        Ok(self)
    }

    /// Declares that `𝒩` fixes each of the `degree` Brauer characters.
    pub fn with_trivial_action(mut self, degree: usize) -> Self {
        let images = self.elements.iter().map(|&x| (x, Permutation::identity(degree))).collect();
        self.ibr = Some(IbrAction { action: PermutationAction::trivial(degree), images });
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The elements of `𝒩` in increasing order, starting with `1`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `n = |𝒩|`.
    pub fn n(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn n_p(&self) -> u64 {
        split_part(self.n(), self.p).0
    }

    pub fn n_p_prime(&self) -> u64 {
        split_part(self.n(), self.p).1
    }

    pub fn has_ibr_action(&self) -> bool {
        self.ibr.is_some()
    }

    /// The image of `𝒩` in the symmetric group on `IBr(b)`, if supplied.
    pub fn ibr_action(&self) -> Option<&PermutationAction> {
        self.ibr.as_ref().map(|a| &a.action)
    }

    /// The permutation of `IBr(b)` induced by `delta`, if an action is supplied.
    pub fn ibr_permutation(&self, delta: u64) -> Option<&Permutation> {
        let key = if self.q == 1 { 0 } else { delta % self.q };
        self.ibr.as_ref().and_then(|a| a.images.get(&key))
    }

    pub fn acts_nontrivially(&self) -> bool {
        self.ibr.as_ref().is_some_and(|a| !a.action.is_trivial())
    }

    /// `P_𝒩 = Σ_{δ ∈ 𝒩} P_δ`, summed over all `n` elements.
    pub fn permutation_sum(&self) -> Option<RationalMatrix> {
        let ibr = self.ibr.as_ref()?;
        let l = ibr.action.degree();
        let mut acc = RationalMatrix::zeros(l, l);
        for perm in ibr.images.values() {
            acc = acc.add(&perm.matrix::<Rational>()).ok()?;
        }
        Some(acc)
    }
}

fn unit_order(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, g, q);
        k += 1;
    }
    k
}

/// `k0(<u> ⋊ 𝒩)`, the number of height-zero characters of the semidirect
/// product of a cyclic group of order `q` with `𝒩`.
///
/// For `p > 2` this is `n + (q - n_p)/n_p'`; for `p = 2` it is
/// `|U : U'| = n · gcd(q, {γ - 1})`; for `q <= 2` or trivial `𝒩` it is `q`.
pub fn k0_semidirect(spec: &SubsectionSpec) -> u64 {
    let (q, n) = (spec.q(), spec.n());
    if q <= 2 || n == 1 {
        return q;
    }
    if spec.p() == 2 {
        let d = spec.elements().iter().fold(q, |d, &g| gcd(d, (g + q - 1) % q));
        return n * d;
    }
    let (n_p, n_pp) = (spec.n_p(), spec.n_p_prime());
    n + (q - n_p) / n_pp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        let s = SubsectionSpec::new(3, 9, &[-1]).unwrap();
        assert_eq!(s.elements(), &[1, 8]);
        let s = SubsectionSpec::new(2, 8, &[-1, 5]).unwrap();
        assert_eq!(s.elements(), &[1, 3, 5, 7]);
        assert_eq!(SubsectionSpec::new(3, 27, &[2]).unwrap().n(), 18);
        assert_eq!(SubsectionSpec::new(5, 1, &[2]).unwrap().n(), 1);
        assert!(SubsectionSpec::new(3, 9, &[3]).is_err());
        assert!(SubsectionSpec::new(3, 12, &[2]).is_err());
        assert!(SubsectionSpec::new(4, 4, &[1]).is_err());
    }

    #[test]
    fn k0_values() {
        assert_eq!(k0_semidirect(&SubsectionSpec::new(3, 9, &[8]).unwrap()), 6);
        assert_eq!(k0_semidirect(&SubsectionSpec::new(2, 8, &[5]).unwrap()), 8);
        assert_eq!(k0_semidirect(&SubsectionSpec::new(2, 8, &[-1]).unwrap()), 4);
        assert_eq!(k0_semidirect(&SubsectionSpec::cyclic_of_order(3, 27, 6).unwrap()), 18);
        assert_eq!(k0_semidirect(&SubsectionSpec::trivial(5, 25).unwrap()), 25);
    }

    #[test]
    fn ibr_action_must_be_a_homomorphism() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let s = SubsectionSpec::new(3, 3, &[2]).unwrap().with_ibr_action(vec![swap.clone()]).unwrap();
        assert!(s.acts_nontrivially());
        assert_eq!(s.ibr_permutation(2), Some(&swap));
        // 5 has order 2 mod 8 but a 3-cycle does not
        let cycle = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert!(SubsectionSpec::new(2, 8, &[5]).unwrap().with_ibr_action(vec![cycle]).is_err());
        let sum = s.permutation_sum().unwrap();
        assert_eq!(sum, RationalMatrix::filled(2, 2, Rational::from_integer(1.into())));
    }
}
