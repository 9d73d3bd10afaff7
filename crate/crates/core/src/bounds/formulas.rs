use crate::arith::{is_prime, pow, prime_power_exponent};
use crate::exactmat::{format_rational, CartanData};
use crate::lattice::{form_minimum, GramForm};
use crate::weights::{symmetrize, u_matrix, WeightMatrix};
use crate::{Integer, Rational, RationalMatrix};

use super::{k0_semidirect, BoundReport, BoundsError, SubsectionSpec, Target};

fn rat(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(a: u64, b: u64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// How a supplied Cartan matrix is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// The Cartan matrix of `b` itself, equal to `q` times that of `b̄`.
    B,
    /// The Cartan matrix of the dominated block `b̄`.
    BBar,
}

/// The Cartan matrix of `b̄`, dividing by `q` when `c` is normalized for `b`.
pub fn dominated_cartan(c: &CartanData, normalization: Normalization, q: u64) -> Result<CartanData, BoundsError> {
    match normalization {
        Normalization::BBar => Ok(c.clone()),
        Normalization::B => c.divided_by(q).map_err(|e| {
            BoundsError::Inconsistent(format!("Cartan matrix of b is not q = {q} times an integral Cartan matrix: {e}"))
        }),
    }
}

/// Checks shapes and makes `w` commute with the action on `IBr(b)`,
/// symmetrizing when needed. Returns the weight used and whether it changed.
fn prepare_weight(
    c_bar: &CartanData,
    spec: &SubsectionSpec,
    w: &WeightMatrix,
) -> Result<(WeightMatrix, bool), BoundsError> {
    let l = c_bar.l();
    if w.dim() != l {
        return Err(BoundsError::Domain(format!("W has size {} but the Cartan matrix has size {l}", w.dim())));
    }
    let Some(action) = spec.ibr_action() else {
        return Ok((w.clone(), false));
    };
    if action.degree() != l {
        return Err(BoundsError::Domain(format!("action of degree {} on {l} Brauer characters", action.degree())));
    }
    for g in action.elements() {
        let p: RationalMatrix = g.matrix();
        if p.mul(c_bar.matrix())? != c_bar.matrix().mul(&p)? {
            return Err(BoundsError::Inconsistent(format!(
                "Cartan matrix is not invariant under the permutation {:?}",
                g.to_one_based()
            )));
        }
    }
    if w.commutes_with(action) {
        Ok((w.clone(), false))
    } else {
        Ok((symmetrize(w.matrix(), action)?.with_provenance(format!("{}/symmetrized", w.provenance())), true))
    }
}

fn spec_inputs(r: BoundReport, spec: &SubsectionSpec, w: &WeightMatrix, trace: &Rational) -> BoundReport {
    r.input("p", spec.p())
        .input("q", spec.q())
        .input("n", spec.n())
        .input("W", w.provenance())
        .input("tr(WC)", format_rational(trace))
}

/// `k(B) <= (n + (q-1)/n) tr(W C̄) <= q tr(W C̄)` for a major subsection
/// (`u` central in a defect group), where `𝒩` is a `p'`-group.
pub fn theorem_a_bound(c_bar: &CartanData, spec: &SubsectionSpec, w: &WeightMatrix) -> Result<BoundReport, BoundsError> {
    let (q, n) = (spec.q(), spec.n());
    if n % spec.p() == 0 {
        return Err(BoundsError::Precondition(format!(
            "|𝒩| = {n} is divisible by p = {}; for u central in a defect group 𝒩 is a p'-group and |𝒩| divides p - 1",
            spec.p()
        )));
    }
    let (w, symmetrized) = prepare_weight(c_bar, spec, w)?;
    let tr = w.matrix().trace_of_product(c_bar.matrix())?;
    let factor = rat(n) + frac(q - 1, n);
    let r = BoundReport::new("theorem_a", Target::K, &factor * &tr, "(n + (q-1)/n) tr(W C)")
        .with_alternate(rat(q) * &tr)
        .flag("first_inequality_strict", spec.acts_nontrivially())
        .flag("second_inequality_strict", 1 < n && n + 1 < q)
        .flag("weight_symmetrized", symmetrized);
    Ok(spec_inputs(r, spec, &w, &tr))
}

/// `k0(B) <= k0(<u> ⋊ 𝒩) tr(W C̄)` for any subsection.
pub fn theorem_b_bound(c_bar: &CartanData, spec: &SubsectionSpec, w: &WeightMatrix) -> Result<BoundReport, BoundsError> {
    let (w, symmetrized) = prepare_weight(c_bar, spec, w)?;
    let tr = w.matrix().trace_of_product(c_bar.matrix())?;
    let k0 = k0_semidirect(spec);
    let r = BoundReport::new("theorem_b", Target::K0, rat(k0) * &tr, "k0(<u> x| N) tr(W C)")
        .with_alternate(rat(spec.q()) * &tr)
        .flag("strict", spec.acts_nontrivially())
        .flag("weight_symmetrized", symmetrized)
        .input("k0(U)", k0);
    Ok(spec_inputs(r, spec, &w, &tr))
}

/// `k0(B) <= tr(W C̄ P_𝒩) + ((q-1)/n) tr(W C̄)` with `P_𝒩 = Σ_δ P_δ`,
/// available for `p > 2`, `p ∤ n` once the action on `IBr(b)` is known.
pub fn refined_bound(c_bar: &CartanData, spec: &SubsectionSpec, w: &WeightMatrix) -> Result<BoundReport, BoundsError> {
    if spec.p() == 2 || spec.n_p() != 1 {
        return Err(BoundsError::Precondition("the refined estimate needs p > 2 and p not dividing |𝒩|".into()));
    }
    let p_sum = spec
        .permutation_sum()
        .ok_or_else(|| BoundsError::Precondition("the refined estimate needs the action of 𝒩 on IBr(b)".into()))?;
    let (w, symmetrized) = prepare_weight(c_bar, spec, w)?;
    let tr = w.matrix().trace_of_product(c_bar.matrix())?;
    let tr_p = w.matrix().mul(c_bar.matrix())?.trace_of_product(&p_sum)?;
    let value = &tr_p + frac(spec.q() - 1, spec.n()) * &tr;
    let r = BoundReport::new("refined", Target::K0, value, "tr(W C P_N) + ((q-1)/n) tr(W C)")
        .flag("weight_symmetrized", symmetrized)
        .input("tr(WCP_N)", format_rational(&tr_p));
    Ok(spec_inputs(r, spec, &w, &tr))
}

/// `k0(B) <= (q + p^s (r^2 - 1)) / (q r) · p^d` for `l(b) = 1`, `p > 2`,
/// where `|N_G(<u>, b) : C_G(u)| = p^s r` with `p ∤ r`.
pub fn hks_bound(p: u64, q: u64, s: u32, r: u64, d: u32) -> Result<BoundReport, BoundsError> {
    if !is_prime(p) || p == 2 {
        return Err(BoundsError::Domain(format!("this bound needs an odd prime, got p = {p}")));
    }
    if prime_power_exponent(q, p).is_none() {
        return Err(BoundsError::Domain(format!("q = {q} is not a power of {p}")));
    }
    if r == 0 || r % p == 0 {
        return Err(BoundsError::Domain(format!("r = {r} must be positive and prime to p")));
    }
    let ps = pow(p, s);
    let num = Rational::from_integer(Integer::from(q) + Integer::from(ps) * (Integer::from(r) * r - 1u32));
    let value = num / (rat(q) * rat(r)) * Rational::from_integer(Integer::from(p).pow(d));
    Ok(BoundReport::new("hks", Target::K0, value, "(q + p^s (r^2-1)) / (q r) p^d")
        .input("p", p)
        .input("q", q)
        .input("s", s)
        .input("r", r)
        .input("d", d))
}

/// `k(B) <= l(b)/m <= l(b) p^d` with `m` the minimum of `x C^{-1} x^t` over
/// nonzero integer `x`, for the Cartan matrix `C` of `b`.
pub fn brauer_5d_bound(c_of_b: &CartanData) -> Result<BoundReport, BoundsError> {
    let l = c_of_b.l() as u64;
    let inv = c_of_b.matrix().inverse()?;
    let min = form_minimum(&GramForm::new(inv)?)?;
    let value = rat(l) / &min.value;
    let pd = Rational::from_integer(c_of_b.largest_elementary_divisor());
    let weaker = rat(l) * &pd;
    if value > weaker {
        return Err(BoundsError::Internal(format!(
            "l/m = {} exceeds l p^d = {}",
            format_rational(&value),
            format_rational(&weaker)
        )));
    }
    Ok(BoundReport::new("brauer_5d", Target::K, value, "l/m, m = min x C^-1 x^t")
        .with_alternate(weaker)
        .input("l", l)
        .input("m", format_rational(&min.value))
        .input("p^d", format_rational(&pd)))
}

/// Theorem A evaluated on `C = (m + δ_ij)` of size `l` with `W = U_l` and
/// `𝒩` cyclic of order `a` in `(Z/u)^×`, where `tr(U_l C) = l + m`.
pub fn dade_cross_check(p: u64, u_order: u64, a: u64, l: usize, m: u64) -> Result<BoundReport, BoundsError> {
    let c = RationalMatrix::from_fn(l, l, |i, j| rat(m + (i == j) as u64));
    let c = CartanData::new(c, p, None)?;
    let w = u_matrix(l)?;
    let tr = w.matrix().trace_of_product(c.matrix())?;
    if tr != rat(l as u64 + m) {
        return Err(BoundsError::Internal(format!("tr(U_l (m + δ)) = {} != l + m", format_rational(&tr))));
    }
    let spec = SubsectionSpec::cyclic_of_order(p, u_order, a)?;
    theorem_a_bound(&c, &spec, &w)
}

/// The bound `(a + (|u|-1)/a)(b + (|D/u|-1)/b) <= |D|` for blocks with abelian
/// defect group `D`, `D/<u>` cyclic, `a = |N_E(<u>)/C_E(u)|`, `b = |C_E(u)|`.
///
/// The value is recomputed through [`theorem_a_bound`] via
/// [`dade_cross_check`] and the two must agree.
pub fn dade_proposition_bound(d_order: u64, u_order: u64, a: u64, b: u64) -> Result<BoundReport, BoundsError> {
    let p = crate::arith::prime_of_prime_power(d_order)
        .ok_or_else(|| BoundsError::Domain(format!("|D| = {d_order} is not a prime power > 1")))?;
    if prime_power_exponent(u_order, p).is_none() || d_order % u_order != 0 {
        return Err(BoundsError::Domain(format!("|<u>| = {u_order} must be a power of {p} dividing |D| = {d_order}")));
    }
    let quot = d_order / u_order;
    if a == 0 || (p - 1) % a != 0 || b == 0 || (p - 1) % b != 0 {
        return Err(BoundsError::Domain(format!("a = {a} and b = {b} must divide p - 1 = {}", p - 1)));
    }
    if (u_order == 1 && a != 1) || (quot == 1 && b != 1) {
        return Err(BoundsError::Domain("a trivial factor group forces the matching order to be 1".into()));
    }
    let value = (rat(a) + frac(u_order - 1, a)) * (rat(b) + frac(quot - 1, b));
    let m = (quot - 1) / b;
    let check = dade_cross_check(p, u_order, a, b as usize, m)?;
    if check.value != value {
        return Err(BoundsError::Internal(format!(
            "product formula {} disagrees with theorem_a {}",
            format_rational(&value),
            format_rational(&check.value)
        )));
    }
    if value > rat(d_order) {
        return Err(BoundsError::Internal(format!("bound {} exceeds |D| = {d_order}", format_rational(&value))));
    }
    Ok(BoundReport::new("dade", Target::K, value, "(a + (|u|-1)/a)(b + (|D/u|-1)/b)")
        .with_alternate(rat(d_order))
        .input("|D|", d_order)
        .input("|u|", u_order)
        .input("a", a)
        .input("b", b))
}
