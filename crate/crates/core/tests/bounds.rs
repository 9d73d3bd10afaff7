use std::collections::BTreeSet;

use kbound::bounds::{
    brauer_5d_bound, classical_bounds, compare_all, dade_cross_check, dade_proposition_bound, hks_bound, k0_semidirect,
    kw_bound, refined_bound, theorem_a_bound, theorem_b_bound, BlockData, BoundsError, Normalization, SubsectionSpec,
    Target,
};
use kbound::exactmat::CartanData;
use kbound::weights::{from_quadratic_form, u_matrix, Permutation, QuadraticForm, WeightMatrix};
use kbound::{Rational, RationalMatrix};
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn one() -> WeightMatrix {
    WeightMatrix::certified(RationalMatrix::identity(1), "one").unwrap()
}

fn agl18() -> CartanData {
    CartanData::from_rows(
        vec![
            vec![2, 0, 0, 1, 1],
            vec![0, 2, 0, 1, 1],
            vec![0, 0, 2, 1, 1],
            vec![1, 1, 1, 4, 3],
            vec![1, 1, 1, 3, 4],
        ],
        2,
        Some(3),
    )
    .unwrap()
}

fn agl18_form() -> QuadraticForm {
    let mut terms: Vec<_> = (1..=5).map(|i| (i, i, 1)).collect();
    terms.extend([(1, 2, 1), (1, 5, -1), (2, 5, -1), (3, 5, -1), (4, 5, -1)]);
    QuadraticForm::new(5, terms).unwrap()
}

fn a4xa4() -> CartanData {
    let j = RationalMatrix::from_fn(3, 3, |a, b| r(1 + (a == b) as i64));
    CartanData::new(j.kron(&j), 2, Some(4)).unwrap()
}

/// `U = Z/q ⋊ 𝒩` as pairs `(a, g)` with `(a, g)(b, h) = (a + g b, g h)`.
struct Semidirect {
    q: u64,
    units: Vec<u64>,
}

impl Semidirect {
    fn elements(&self) -> Vec<(u64, u64)> {
        (0..self.q).flat_map(|a| self.units.iter().map(move |&g| (a, g))).collect()
    }

    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        ((x.0 + x.1 * y.0) % self.q, (x.1 * y.1) % self.q)
    }

    fn inv(&self, x: (u64, u64)) -> (u64, u64) {
        self.elements().into_iter().find(|&y| self.mul(x, y) == (0, 1 % self.q)).unwrap()
    }

    fn class_count(&self) -> usize {
        let els = self.elements();
        let mut seen = BTreeSet::new();
        let mut classes = 0;
        for &x in &els {
            if seen.contains(&x) {
                continue;
            }
            classes += 1;
            for &g in &els {
                seen.insert(self.mul(self.mul(g, x), self.inv(g)));
            }
        }
        classes
    }

    /// `|U : U'|` with `U'` the subgroup generated by commutators.
    fn abelianization_order(&self) -> usize {
        let els = self.elements();
        let mut sub: BTreeSet<(u64, u64)> = BTreeSet::from([(0, 1 % self.q)]);
        for &x in &els {
            for &y in &els {
                sub.insert(self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y))));
            }
        }
        loop {
            let next: BTreeSet<_> = sub.iter().flat_map(|&a| sub.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            if next.len() == sub.len() {
                return els.len() / sub.len();
            }
            sub = next;
        }
    }

    /// Characters of `U` come from `𝒩`-orbits on the dual of `Z/q`: an orbit of
    /// size `s` with stabilizer of order `t` contributes `t` characters of
    /// degree `s` (stabilizers are cyclic for odd `p`). Returns `(k, k0)`.
    fn orbit_counts(&self, p: u64) -> (u64, u64) {
        let mut seen = BTreeSet::new();
        let (mut k, mut k0) = (0, 0);
        for a in 0..self.q {
            if seen.contains(&a) {
                continue;
            }
            let orbit: BTreeSet<u64> = self.units.iter().map(|&g| (a * g) % self.q).collect();
            let size = orbit.len() as u64;
            let stab = self.units.len() as u64 / size;
            k += stab;
            if size % p != 0 {
                k0 += stab;
            }
            seen.extend(orbit);
        }
        (k, k0)
    }
}

#[test]
fn k0_examples() {
    assert_eq!(k0_semidirect(&SubsectionSpec::new(3, 9, &[-1]).unwrap()), 6);
    assert_eq!(k0_semidirect(&SubsectionSpec::new(2, 8, &[5]).unwrap()), 8);
    assert_eq!(k0_semidirect(&SubsectionSpec::new(2, 8, &[-1]).unwrap()), 4);
    let s = SubsectionSpec::new(3, 27, &[-1, 10]).unwrap();
    assert_eq!((s.n(), s.n_p(), s.n_p_prime()), (6, 3, 2));
    assert_eq!(k0_semidirect(&s), 18);
}

#[test]
fn dihedral_of_order_eighteen() {
    let u = Semidirect { q: 9, units: vec![1, 8] };
    assert_eq!(u.class_count(), 6);
    assert_eq!(u.orbit_counts(3), (6, 6));
}

#[test]
fn k0_matches_group_oracles() {
    for (p, q) in [(3u64, 3u64), (3, 9), (3, 27), (5, 5), (5, 25), (7, 7), (2, 4), (2, 8), (2, 16)] {
        let units: Vec<u64> = (1..q).filter(|g| g % p != 0).collect();
        // every subgroup of the unit group, via its generating pairs
        let mut subgroups = BTreeSet::new();
        for &a in &units {
            for &b in &units {
                let spec = SubsectionSpec::new(p, q, &[a as i64, b as i64]).unwrap();
                subgroups.insert(spec.elements().to_vec());
            }
        }
        for els in subgroups {
            let spec = SubsectionSpec::new(p, q, &els.iter().map(|&g| g as i64).collect::<Vec<_>>()).unwrap();
            let u = Semidirect { q, units: els.clone() };
            let k0 = k0_semidirect(&spec);
            if p == 2 {
                assert_eq!(k0 as usize, u.abelianization_order(), "p=2 q={q} N={els:?}");
            } else {
                let (k, k0_oracle) = u.orbit_counts(p);
                assert_eq!(k as usize, u.class_count(), "q={q} N={els:?}");
                assert_eq!(k0, k0_oracle, "q={q} N={els:?}");
            }
        }
    }
}

#[test]
fn theorem_a_examples() {
    let c = CartanData::from_rows(vec![vec![1]], 3, None).unwrap();
    let spec = SubsectionSpec::new(3, 3, &[2]).unwrap();
    let rep = theorem_a_bound(&c, &spec, &one()).unwrap();
    assert_eq!(rep.value, r(3));
    assert_eq!(rep.alternate, Some(r(3)));
    assert!(!rep.flags["second_inequality_strict"]);
    assert_eq!(rep.target, Target::K);

    let trivial = SubsectionSpec::trivial(2, 1).unwrap();
    let w = u_matrix(5).unwrap();
    assert_eq!(theorem_a_bound(&agl18(), &trivial, &w).unwrap().value, w.matrix().trace_of_product(agl18().matrix()).unwrap());

    let inv = agl18().matrix().inverse().unwrap().scale(&r(2));
    let w = WeightMatrix::certified(inv, "inverse").unwrap();
    assert_eq!(theorem_a_bound(&agl18(), &trivial, &w).unwrap().value, r(10));

    let s = SubsectionSpec::new(3, 9, &[3 + 1]).unwrap();
    assert!(matches!(theorem_a_bound(&c, &s, &one()), Err(BoundsError::Precondition(_))));
}

#[test]
fn theorem_a_strictness_flags() {
    let c = CartanData::from_rows(vec![vec![1]], 7, None).unwrap();
    for (n, strict) in [(1, false), (2, true), (3, true), (6, false)] {
        let spec = SubsectionSpec::cyclic_of_order(7, 7, n).unwrap();
        let rep = theorem_a_bound(&c, &spec, &one()).unwrap();
        assert_eq!(rep.flags["second_inequality_strict"], strict);
        assert_eq!(rep.value == r(7), !strict);
    }
}

#[test]
fn theorem_a_symmetrizes_under_action() {
    let c = CartanData::from_rows(vec![vec![2, 1], vec![1, 2]], 3, None).unwrap();
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    let spec = SubsectionSpec::new(3, 3, &[2]).unwrap().with_ibr_action(vec![swap]).unwrap();
    let w = WeightMatrix::certified(
        RationalMatrix::from_rows(vec![vec![r(1), Rational::new((-1).into(), 2.into())], vec![Rational::new((-1).into(), 2.into()), r(2)]])
            .unwrap(),
        "skew",
    )
    .unwrap();
    let rep = theorem_a_bound(&c, &spec, &w).unwrap();
    assert!(rep.flags["weight_symmetrized"]);
    assert!(rep.flags["first_inequality_strict"]);
    // tr(W C) = 2 - 1/2 - 1/2 + 4 = 5, factor 2 + 2/2 = 3
    assert_eq!(rep.value, r(15));

    let bad = CartanData::from_rows(vec![vec![2, 1], vec![1, 3]], 3, None).unwrap();
    assert!(matches!(theorem_a_bound(&bad, &spec, &w), Err(BoundsError::Inconsistent(_))));
}

#[test]
fn theorem_b_examples() {
    for p in [2u64, 3, 5] {
        let c = CartanData::from_rows(vec![vec![1]], p, None).unwrap();
        let rep = theorem_b_bound(&c, &SubsectionSpec::trivial(p, p).unwrap(), &one()).unwrap();
        assert_eq!(rep.value, r(p as i64));
    }
    let c = CartanData::from_rows(vec![vec![1]], 3, None).unwrap();
    assert_eq!(theorem_b_bound(&c, &SubsectionSpec::new(3, 9, &[-1]).unwrap(), &one()).unwrap().value, r(6));
    let c = CartanData::from_rows(vec![vec![1]], 2, None).unwrap();
    assert_eq!(theorem_b_bound(&c, &SubsectionSpec::new(2, 4, &[-1]).unwrap(), &one()).unwrap().value, r(4));
}

#[test]
fn refined_bound_on_two_characters() {
    // 𝒩 of order 2 swapping two Brauer characters, C̄ = (1 + δ)
    let c = CartanData::from_rows(vec![vec![2, 1], vec![1, 2]], 3, None).unwrap();
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    let spec = SubsectionSpec::new(3, 3, &[2]).unwrap().with_ibr_action(vec![swap]).unwrap();
    let w = WeightMatrix::certified(RationalMatrix::identity(2), "I").unwrap();
    let rep = refined_bound(&c, &spec, &w).unwrap();
    // P_N = J, tr(C J) = 6, plus (2/2) tr(C) = 4
    assert_eq!(rep.value, r(10));
    let theorem_b = theorem_b_bound(&c, &spec, &w).unwrap();
    assert!(rep.value <= theorem_b.value);
    assert!(refined_bound(&c, &SubsectionSpec::new(3, 3, &[2]).unwrap(), &w).is_err());
}

#[test]
fn classical_examples() {
    let rows = classical_bounds(&agl18(), None, None).unwrap();
    let get = |name: &str| rows.iter().find(|r| r.name == name).unwrap().value.clone();
    assert_eq!(get("trace"), r(14));
    assert_eq!(get("brandt"), r(10));
    assert_eq!(get("wada"), r(10));
    assert_eq!(get("brauer_feit"), r(64));

    let c3 = CartanData::from_rows(vec![vec![3]], 3, None).unwrap();
    for row in classical_bounds(&c3, None, None).unwrap() {
        assert_eq!(row.value, r(3));
    }

    let j = CartanData::from_rows(vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]], 2, None).unwrap();
    let part = vec![vec![1], vec![2], vec![3]];
    let rows = classical_bounds(&j, None, Some(&part)).unwrap();
    assert_eq!(rows.iter().find(|r| r.name == "partition").unwrap().value, r(4));
    let whole = vec![vec![1, 2, 3]];
    assert_eq!(classical_bounds(&j, None, Some(&whole)).unwrap()[3].value, r(4));
    assert!(classical_bounds(&j, None, Some(&[vec![1, 2], vec![2, 3]])).is_err());
    assert!(classical_bounds(&j, None, Some(&[vec![1, 2]])).is_err());
    assert!(classical_bounds(&j, Some(&[1, 1, 2]), None).is_err());
}

#[test]
fn wada_follows_ordering() {
    let order = [4, 5, 1, 2, 3];
    let rows = classical_bounds(&agl18(), Some(&order), None).unwrap();
    // tr = 14, chain c45 + c51 + c12 + c23 = 3 + 1 + 0 + 0
    assert_eq!(rows.iter().find(|r| r.name == "wada").unwrap().value, r(10));
}

#[test]
fn kw_examples() {
    assert_eq!(kw_bound(&agl18(), &agl18_form()).unwrap().value, r(8));
    assert_eq!(kw_bound(&agl18(), &QuadraticForm::unit(5)).unwrap().value, r(14));
    assert_eq!(kw_bound(&agl18(), &QuadraticForm::wada(5)).unwrap().value, r(10));
}

#[test]
fn brauer_5d_examples() {
    let rep = brauer_5d_bound(&agl18()).unwrap();
    assert_eq!(rep.value, r(10));
    assert_eq!(rep.inputs["m"], "1/2");
    let rep = brauer_5d_bound(&a4xa4()).unwrap();
    assert_eq!(rep.value, r(16));
    assert_eq!(rep.inputs["m"], "9/16");
    let rep = brauer_5d_bound(&CartanData::from_rows(vec![vec![3]], 3, None).unwrap()).unwrap();
    assert_eq!(rep.value, r(3));
    assert_eq!(rep.alternate, Some(r(3)));
}

#[test]
fn hks_examples() {
    assert_eq!(hks_bound(3, 9, 0, 1, 2).unwrap().value, r(9));
    assert_eq!(hks_bound(3, 9, 0, 2, 2).unwrap().value, r(6));
    assert_eq!(hks_bound(3, 27, 1, 2, 3).unwrap().value, r(18));
    assert!(hks_bound(2, 4, 0, 1, 2).is_err());
    assert!(hks_bound(3, 9, 0, 3, 2).is_err());
}

#[test]
fn dade_examples() {
    assert_eq!(dade_proposition_bound(9, 3, 1, 1).unwrap().value, r(9));
    assert_eq!(dade_proposition_bound(27, 3, 2, 2).unwrap().value, r(18));
    assert!(dade_proposition_bound(27, 3, 4, 1).is_err());
    assert!(dade_proposition_bound(27, 81, 1, 1).is_err());
    // tr(U_3 (2 + δ)) = 5 and the trivial subsection factor is 1
    assert_eq!(dade_cross_check(5, 1, 1, 3, 2).unwrap().value, r(5));
}

#[test]
fn compare_agl18() {
    let mut data = BlockData::new("agl18", agl18(), Normalization::B, SubsectionSpec::trivial(2, 1).unwrap()).unwrap();
    data.forms.push(agl18_form());
    data.known_kb = Some(8);
    let cmp = compare_all(&data).unwrap();
    assert_eq!(cmp.best_k_report().unwrap().value, r(8));
    assert!(cmp.violations.is_empty());
    assert!(cmp.rows.iter().filter(|r| r.target == Target::K).all(|row| row.value >= r(8)));
    let names: Vec<_> = cmp.rows.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(
        names,
        ["theorem_a", "theorem_b", "brauer_5d", "kw_form_1", "trace", "brandt", "wada", "brauer_feit"]
    );
    assert!(cmp.conjecture.unwrap().implied);
}

#[test]
fn compare_a4xa4() {
    let mut data = BlockData::new("a4xa4", a4xa4(), Normalization::B, SubsectionSpec::trivial(2, 1).unwrap()).unwrap();
    data.known_kb = Some(16);
    let cmp = compare_all(&data).unwrap();
    assert_eq!(cmp.best_k_report().unwrap().value, r(16));
    assert!(cmp.violations.is_empty());
}

#[test]
fn compare_s3_subsection() {
    let c = CartanData::from_rows(vec![vec![3]], 3, Some(1)).unwrap();
    let mut data = BlockData::new("s3", c, Normalization::B, SubsectionSpec::new(3, 3, &[2]).unwrap()).unwrap();
    data.known_kb = Some(3);
    let cmp = compare_all(&data).unwrap();
    let best = cmp.best_k_report().unwrap();
    assert_eq!((best.name.as_str(), best.value.clone()), ("theorem_a", r(3)));
}

#[test]
fn inconsistent_normalization_is_rejected() {
    let c = CartanData::from_rows(vec![vec![4]], 3, None).unwrap();
    let spec = SubsectionSpec::new(3, 3, &[2]).unwrap();
    assert!(matches!(BlockData::new("x", c, Normalization::B, spec), Err(BoundsError::Inconsistent(_))));
}

proptest! {
    #[test]
    fn theorem_a_factor_is_at_most_q(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), k in 1u32..=3) {
        let q = p.pow(k);
        for n in (1..p).filter(|n| (p - 1) % n == 0) {
            let factor = Rational::from_integer(n.into()) + Rational::new((q - 1).into(), n.into());
            let q_r = Rational::from_integer(q.into());
            prop_assert!(factor <= q_r);
            prop_assert_eq!(factor == q_r, n == 1 || n == q - 1);
        }
    }

    #[test]
    fn kw_equals_weight_trace(coeffs in prop::collection::vec(-1i64..=1, 3)) {
        // x1^2 + x2^2 + x3^2 + a x1x2 + b x1x3 + c x2x3, kept positive definite
        let terms = vec![(1, 1, 1), (2, 2, 1), (3, 3, 1), (1, 2, coeffs[0]), (1, 3, coeffs[1]), (2, 3, coeffs[2])];
        let form = QuadraticForm::new(3, terms).unwrap();
        let c = CartanData::from_rows(vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]], 2, None).unwrap();
        if let Ok(w) = from_quadratic_form(&form) {
            let kw = kw_bound(&c, &form).unwrap();
            prop_assert_eq!(kw.value, w.matrix().trace_of_product(c.matrix()).unwrap());
        }
    }

    #[test]
    fn brauer_5d_at_most_l_pd(d in prop::collection::vec(1i64..=4, 2), m in 0i64..=3) {
        let rows = vec![vec![d[0] + m, m], vec![m, d[1] + m]];
        let c = CartanData::from_rows(rows, 2, None).unwrap();
        let rep = brauer_5d_bound(&c).unwrap();
        prop_assert!(rep.value <= rep.alternate.unwrap());
    }

    #[test]
    fn hks_matches_theorem_b(p in prop::sample::select(vec![3u64, 5, 7]), k in 0u32..=2, extra in 0u32..=2, r_idx in 0usize..4) {
        let q = p.pow(k);
        let d = k + extra;
        let divisors: Vec<u64> = (1..p).filter(|n| (p - 1) % n == 0).collect();
        let n = if q == 1 { 1 } else { divisors[r_idx % divisors.len()] };
        let c = CartanData::from_rows(vec![vec![p.pow(d - k) as i64]], p, None).unwrap();
        let spec = SubsectionSpec::cyclic_of_order(p, q, n).unwrap();
        let b = theorem_b_bound(&c, &spec, &one()).unwrap();
        prop_assert_eq!(hks_bound(p, q, 0, n, d).unwrap().value, b.value);
    }
}
