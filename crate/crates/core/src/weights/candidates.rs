//! A deterministic family of weight matrices to try against a Cartan matrix.
//!
//! Nothing here is optimal: the best ordering for a `U_l` weight is a
//! maximum-weight Hamiltonian path problem, searched greedily with 2-opt
//! refinement. Lower traces are better; none is claimed to be the least.

use num_traits::Zero;

use crate::exactmat::CartanData;
use crate::lattice::{form_minimum, GramForm};
use crate::{Rational, RationalMatrix};

use super::{symmetrize, u_matrix_ordered, PermutationAction, WeightError, WeightMatrix};

/// One candidate weight together with `tr(W C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub weight: WeightMatrix,
    pub trace: Rational,
}

impl Candidate {
    pub fn tag(&self) -> &str {
        self.weight.provenance()
    }
}

fn path_weight(c: &RationalMatrix, path: &[usize]) -> Rational {
    path.windows(2).fold(Rational::zero(), |acc, w| acc + &c[(w[0], w[1])])
}

fn greedy_path(c: &RationalMatrix, start: usize) -> Vec<usize> {
    let n = c.rows();
    let mut used = vec![false; n];
    let mut path = vec![start];
    used[start] = true;
    while path.len() < n {
        let last = *path.last().unwrap();
        let next = (0..n)
            .filter(|&j| !used[j])
            .max_by(|&a, &b| c[(last, a)].cmp(&c[(last, b)]).then(b.cmp(&a)))
            .unwrap();
        used[next] = true;
        path.push(next);
    }
    path
}

/// Improve a path by segment reversals until no reversal increases its weight.
fn two_opt(c: &RationalMatrix, mut path: Vec<usize>) -> Vec<usize> {
    let n = path.len();
    let mut best = path_weight(c, &path);
    loop {
        let mut improved = false;
        for i in 0..n {
            for j in i + 1..n {
                path[i..=j].reverse();
                let w = path_weight(c, &path);
                if w > best {
                    best = w;
                    improved = true;
                } else {
                    path[i..=j].reverse();
                }
            }
        }
        if !improved {
            return path;
        }
    }
}

/// An ordering `o` of `0..l` with large `Σ c[o(i)][o(i+1)]`, found by a
/// greedy walk from every start followed by 2-opt. Ties keep the first found.
pub fn best_hamiltonian_path(c: &RationalMatrix) -> Vec<usize> {
    let n = c.rows();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for start in 0..n {
        let path = two_opt(c, greedy_path(c, start));
        let w = path_weight(c, &path);
        if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
            best = Some((w, path));
        }
    }
    best.map(|(_, p)| p).unwrap_or_default()
}

/// Candidate weights for `c`, sorted by `tr(W C)` and then by tag.
///
/// Always includes the identity, `U_l` in the input order, `U_l` along
/// [`best_hamiltonian_path`], `C^{-1}/m` with `m` the lattice minimum of
/// `C^{-1}` (trace `l/m`), and the symmetrization of each under `action`
/// whenever that differs from the original.
pub fn weight_candidates(c: &CartanData, action: &PermutationAction) -> Result<Vec<Candidate>, WeightError> {
    let l = c.l();
    if action.degree() != l {
        return Err(WeightError::Domain(format!("action of degree {} for a Cartan matrix of size {l}", action.degree())));
    }
    let cm = c.matrix();
    let mut base = vec![WeightMatrix::certified(RationalMatrix::identity(l), "identity")?];
    let input: Vec<usize> = (0..l).collect();
    base.push(u_matrix_ordered(&input)?.with_provenance("u_input_order"));
    let path = best_hamiltonian_path(cm);
    let label: Vec<String> = path.iter().map(|i| (i + 1).to_string()).collect();
    base.push(u_matrix_ordered(&path)?.with_provenance(format!("u_best_path[{}]", label.join(","))));

    let inv = cm.inverse()?;
    let m = form_minimum(&GramForm::new(inv.clone())?)?.value;
    base.push(WeightMatrix::certified(inv.scale(&(Rational::from_integer(1.into()) / m)), "inverse_cartan")?);

    let mut all = Vec::with_capacity(2 * base.len());
    for w in base {
        if !action.is_trivial() {
            let s = symmetrize(w.matrix(), action)?;
            if s.matrix() != w.matrix() {
                all.push(s.with_provenance(format!("{}/symmetrized", w.provenance())));
            }
        }
        all.push(w);
    }
    let mut out = all
        .into_iter()
        .map(|weight| {
            let trace = weight.matrix().trace_of_product(cm)?;
            Ok(Candidate { weight, trace })
        })
        .collect::<Result<Vec<_>, WeightError>>()?;
    out.sort_by(|a, b| a.trace.cmp(&b.trace).then_with(|| a.tag().cmp(b.tag())));
    Ok(out)
}
