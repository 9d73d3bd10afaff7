use std::collections::BTreeSet;

use crate::arith::{modulo, prime_power_exponent};
use crate::bounds::SubsectionSpec;
use crate::exactmat::CartanData;
use crate::weights::Permutation;
use crate::{Integer, Rational, RationalMatrix};

use super::split::{fourier_split, CycMatrix};
use super::{CyclotomicInteger, GenDecData, GendecError};

/// Principal block data of `G = (Z_q × K) ⋊ <γ>` for the subsection of a
/// generator `u` of `Z_q`.
#[derive(Clone, Debug)]
pub struct TwistedProduct {
    pub data: GenDecData,
    /// Cartan matrix of the principal block of `K`, which is `C̄` here.
    pub c_bar: CartanData,
    pub heights: Vec<u32>,
}

fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Builds the generalized decomposition matrix of `G = (Z_q × K) ⋊ <γ>`,
/// where `γ` acts on `Z_q` by `t ↦ γt` and on `K` by an automorphism that
/// permutes `Irr(B_0(K))` by `irr_perm` and `IBr(B_0(K))` by `ibr_perm`.
///
/// `decomposition` is the decomposition matrix of `B_0(K)` with rows in the
/// order of `degrees`. The order of `γ` in `(Z/q)^×` must be the order of
/// the acting group, so that `C_G(u) = Z_q × K`.
///
/// Each orbit `O` of `(t, ψ) ↦ (γt, ψ^α)` gives `|stab|` characters, all
/// with the row `Σ_{(t', ψ') ∈ O} ζ^{t'} D[ψ']`.
pub fn twisted_product(
    p: u64,
    q: u64,
    gamma: i64,
    decomposition: &[Vec<i64>],
    degrees: &[u64],
    irr_perm: &Permutation,
    ibr_perm: &Permutation,
) -> Result<TwistedProduct, GendecError> {
    if prime_power_exponent(q, p).is_none() {
        return Err(GendecError::Domain(format!("q = {q} is not a power of p = {p}")));
    }
    let k_k = decomposition.len();
    let l = decomposition.first().map_or(0, Vec::len);
    if k_k == 0 || l == 0 || decomposition.iter().any(|r| r.len() != l) {
        return Err(GendecError::Domain("decomposition matrix must be a nonempty rectangle".into()));
    }
    if degrees.len() != k_k || irr_perm.degree() != k_k || ibr_perm.degree() != l {
        return Err(GendecError::Domain("degrees and permutations must match the decomposition matrix".into()));
    }
    for (a, row) in decomposition.iter().enumerate() {
        if degrees[irr_perm.apply(a)] != degrees[a] {
            return Err(GendecError::Inconsistent(format!("irr_perm moves character {} to a different degree", a + 1)));
        }
        for (b, &d) in row.iter().enumerate() {
            if decomposition[irr_perm.apply(a)][ibr_perm.apply(b)] != d {
                return Err(GendecError::Inconsistent(format!(
                    "D is not invariant under the action at ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    let g = modulo(gamma, q.max(1));
    let spec = SubsectionSpec::new(p, q, &[gamma])?;
    let m = spec.n() as usize;
    let mut power = irr_perm.clone();
    let mut ibr_power = ibr_perm.clone();
    for _ in 1..m {
        power = power.compose(irr_perm);
        ibr_power = ibr_power.compose(ibr_perm);
    }
    if !power.is_identity() || !ibr_power.is_identity() {
        return Err(GendecError::Precondition(format!("the action on K must have order dividing {m}")));
    }
    let spec = spec.with_ibr_action(vec![ibr_perm.clone()])?;

    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    let mut heights = Vec::new();
    for t0 in 0..q.max(1) {
        for psi0 in 0..k_k {
            if seen.contains(&(t0, psi0)) {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut t, mut psi) = (t0, psi0);
            while seen.insert((t, psi)) {
                orbit.push((t, psi));
                t = t * g % q.max(1);
                psi = irr_perm.apply(psi);
            }
            let mut row = Vec::with_capacity(l);
            for b in 0..l {
                let terms: Vec<(i64, Integer)> =
                    orbit.iter().map(|&(t, psi)| (t as i64, Integer::from(decomposition[psi][b]))).collect();
                row.push(CyclotomicInteger::from_powers(q, p, &terms)?);
            }
            let height = p_valuation(orbit.len() as u64, p) + p_valuation(degrees[psi0], p);
            for _ in 0..m / orbit.len() {
                rows.push(row.clone());
                heights.push(height);
            }
        }
    }
    let q_matrix = CycMatrix::from_rows(rows)?;
    let data = fourier_split(&q_matrix, spec)?;
    let c = RationalMatrix::from_fn(l, l, |a, b| {
        let s: i64 = decomposition.iter().map(|r| r[a] * r[b]).sum();
        Rational::from_integer(s.into())
    });
    let c_bar = CartanData::new(c, p, None)?;
    Ok(TwistedProduct { data, c_bar, heights })
}
