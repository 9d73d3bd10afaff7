//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kbound::bounds::{
    brauer_5d_bound, classical_bounds, dade_cross_check, dade_proposition_bound, hks_bound, k0_semidirect, kw_bound,
    theorem_a_bound, theorem_b_bound, SubsectionSpec,
};
use kbound::exactmat::CartanData;
use kbound::gendec::{
    basis_len, c_tilde, fourier_split, height_zero_valuation_check, iprime, rank_check, verify_longeq,
    verify_orthogonality, CycMatrix, CyclotomicInteger,
};
use kbound::io::fixture;
use kbound::lattice::{form_minimum, GramForm};
use kbound::weights::{blowup_wm, symmetrize, u_matrix, u_matrix_ordered, Permutation, PermutationAction, QuadraticForm, WeightMatrix};
use kbound::{Integer, Rational, RationalMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PROPERTY_CASES: usize = 10_000;
const SEED: u64 = 0x6b62_6f75_6e64;

type Outcome = Result<String, String>;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cartan_of(name: &str) -> Result<CartanData, String> {
    let b = fixture(name).map_err(err)?.load().map_err(err)?;
    Ok(b.block.cartan_b().clone())
}

fn agl18() -> Outcome {
    let start = Instant::now();
    let c = cartan_of("agl18")?;
    let five_d = brauer_5d_bound(&c).map_err(err)?;
    ensure(five_d.value == r(10), || format!("l/m = {}", five_d.value))?;
    let mut terms: Vec<_> = (1..=5).map(|i| (i, i, 1)).collect();
    terms.extend([(1, 2, 1), (1, 5, -1), (2, 5, -1), (3, 5, -1), (4, 5, -1)]);
    let kw = kw_bound(&c, &QuadraticForm::new(5, terms).map_err(err)?).map_err(err)?;
    ensure(kw.value == r(8), || format!("form bound {}", kw.value))?;
    let wada = classical_bounds(&c, None, None).map_err(err)?.into_iter().find(|b| b.name == "wada");
    let wada = wada.ok_or("no wada row")?;
    ensure(wada.value == r(10), || format!("wada {}", wada.value))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("5D = 10, form = 8, Wada = 10 in {:.2?}", start.elapsed()))
}

fn a4xa4() -> Outcome {
    let start = Instant::now();
    let c = cartan_of("a4xa4")?;
    let inv = c.matrix().inverse().map_err(err)?;
    let m = form_minimum(&GramForm::new(inv).map_err(err)?).map_err(err)?;
    ensure(m.value == frac(9, 16), || format!("min C^-1 = {}", m.value))?;
    let five_d = brauer_5d_bound(&c).map_err(err)?;
    ensure(five_d.value == r(16), || format!("l/m = {}", five_d.value))?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("min C^-1 = 9/16, 5D = 16 in {:.2?}", start.elapsed()))
}

fn s3_subsection() -> Outcome {
    let loaded = fixture("s3-subsection").map_err(err)?.load().map_err(err)?;
    let g = loaded.gendec.ok_or("fixture has no gendec record")?;
    // values of the irreducible characters of S3 at a 3-cycle
    let chi_u = [1, 1, -1];
    let q_matrix = CycMatrix::from_rows(
        chi_u.iter().map(|&v| vec![CyclotomicInteger::from_integer(3, 3, Integer::from(v)).unwrap()]).collect(),
    )
    .map_err(err)?;
    ensure(g.data.q_matrix() == q_matrix, || "Q differs from the character values".into())?;
    let data = fourier_split(&q_matrix, g.data.spec().clone()).map_err(err)?;
    for (name, report) in [
        ("orthogonality", verify_orthogonality(&data, &g.c_bar).map_err(err)?),
        ("indicator identity", verify_longeq(&data, &g.c_bar).map_err(err)?),
        ("rank", rank_check(&data)),
    ] {
        ensure(report.all_passed(), || format!("{name}:\n{report}"))?;
    }
    let ct = c_tilde(&g.c_bar).map_err(err)?;
    for row in 0..3 {
        let ok = height_zero_valuation_check(q_matrix.row(row), &ct, 3, 3).map_err(err)?;
        ensure(ok, || format!("row {} fails the valuation test", row + 1))?;
    }
    let w = u_matrix(1).map_err(err)?;
    let a = theorem_a_bound(&g.c_bar, g.data.spec(), &w).map_err(err)?;
    ensure(a.value == r(3) && loaded.block.known_kb == Some(3), || format!("theorem A gives {}", a.value))?;
    ensure(a.flags.get("second_inequality_strict") == Some(&false), || "second inequality flagged strict".into())?;
    Ok("split, orthogonality, indicator identity, rank, valuation pass; theorem A = 3 = k(B)".into())
}

/// `Z/q ⋊ 𝒩` by brute force: class count and `|U : U'|`.
struct Semidirect {
    q: u64,
    units: Vec<u64>,
}

impl Semidirect {
    fn elements(&self) -> Vec<(u64, u64)> {
        (0..self.q).flat_map(|a| self.units.iter().map(move |&g| (a, g))).collect()
    }

    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        ((x.0 + x.1 * y.0) % self.q, x.1 * y.1 % self.q)
    }

    fn inv(&self, x: (u64, u64)) -> (u64, u64) {
        let gi = self.units.iter().copied().find(|&h| h * x.1 % self.q == 1 % self.q).unwrap();
        ((self.q - gi * x.0 % self.q) % self.q, gi)
    }

    fn class_count(&self) -> usize {
        let els = self.elements();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &x in &els {
            if seen.insert(x) {
                count += 1;
                for &g in &els {
                    seen.insert(self.mul(self.mul(g, x), self.inv(g)));
                }
            }
        }
        count
    }

    fn abelianization_order(&self) -> usize {
        let els = self.elements();
        let mut sub: BTreeSet<(u64, u64)> = BTreeSet::new();
        for &x in &els {
            for &y in &els {
                sub.insert(self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y))));
            }
        }
        loop {
            let v: Vec<_> = sub.iter().copied().collect();
            let before = sub.len();
            for &a in &v {
                for &b in &v {
                    sub.insert(self.mul(a, b));
                }
            }
            if sub.len() == before {
                return els.len() / sub.len();
            }
        }
    }
}

fn k0_table() -> Outcome {
    let cases: [(u64, u64, i64, u64); 3] = [(3, 9, -1, 6), (2, 8, 5, 8), (2, 8, -1, 4)];
    for (p, q, g, expected) in cases {
        let spec = SubsectionSpec::new(p, q, &[g]).map_err(err)?;
        let k0 = k0_semidirect(&spec);
        ensure(k0 == expected, || format!("p = {p}, q = {q}, N = <{g}>: {k0} != {expected}"))?;
        if p == 2 {
            let u = Semidirect { q, units: spec.elements().to_vec() };
            let ab = u.abelianization_order() as u64;
            ensure(ab == k0, || format!("|U:U'| = {ab} for q = {q}, N = <{g}>"))?;
        }
    }
    // dihedral group of order 18: two linear characters and four of degree 2
    let degrees = [1u64, 1, 2, 2, 2, 2];
    let d18 = Semidirect { q: 9, units: vec![1, 8] };
    ensure(degrees.iter().map(|d| d * d).sum::<u64>() == 18, || "degrees do not fill |D18|".into())?;
    ensure(d18.class_count() == degrees.len(), || format!("D18 has {} classes", d18.class_count()))?;
    let oracle = degrees.iter().filter(|&&d| d % 3 != 0).count() as u64;
    ensure(oracle == 6, || format!("dihedral oracle gives {oracle}"))?;
    Ok("(3,9,<-1>) -> 6, (2,8,<5>) -> 8, (2,8,<-1>) -> 4; dihedral and |U:U'| oracles agree".into())
}

fn random_pd(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i64>>, i64) {
    // L^t L with L lower triangular, diagonal 1..=2, off-diagonal -1..=1
    let mut l = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = rng.gen_range(1..=2);
        for j in 0..i {
            l[i][j] = rng.gen_range(-1..=1);
        }
    }
    let m: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| l[k][i] * l[k][j]).sum()).collect()).collect();
    (m, rng.gen_range(1..=3))
}

fn brute_minimum(m: &[Vec<i64>], inv_diag: &[f64]) -> i64 {
    let n = m.len();
    let m0 = (0..n).map(|i| m[i][i]).min().unwrap() as f64;
    let bound: Vec<i64> = inv_diag.iter().map(|&d| (m0 * d).sqrt().floor() as i64 + 1).collect();
    let mut x: Vec<i64> = bound.iter().map(|b| -b).collect();
    let mut best = i64::MAX;
    loop {
        if x.iter().any(|&v| v != 0) {
            let v: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * m[i][j] * x[j]).sum::<i64>()).sum();
            best = best.min(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            x[i] += 1;
            if x[i] <= bound[i] {
                break;
            }
            x[i] = -bound[i];
            i += 1;
        }
    }
}

fn to_rational(m: &[Vec<i64>], den: i64) -> RationalMatrix {
    RationalMatrix::from_fn(m.len(), m.len(), |i, j| frac(m[i][j], den))
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |_, _| r(rng.gen_range(lo..=hi)))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut s = RationalMatrix::identity(n);
    for _ in 0..rng.gen_range(0..8) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = r(rng.gen_range(-2..=2));
            let e = RationalMatrix::from_fn(n, n, |a, b| if a == b { r(1) } else if (a, b) == (i, j) { k.clone() } else { r(0) });
            s = e.mul(&s).unwrap();
        }
        if rng.gen_bool(0.2) {
            let p: RationalMatrix = random_permutation(rng, n).matrix();
            s = s.mul(&p).unwrap();
        }
    }
    s
}

fn commuting_pd(g: &RationalMatrix, p: &Permutation) -> RationalMatrix {
    let n = g.rows();
    let base = g.mul(&g.transpose()).unwrap().add(&RationalMatrix::identity(n)).unwrap();
    let mut acc = RationalMatrix::zeros(n, n);
    let mut k = Permutation::identity(n);
    loop {
        let pm: RationalMatrix = k.matrix();
        acc = acc.add(&pm.mul(&base).unwrap().mul(&pm.transpose()).unwrap()).unwrap();
        k = k.compose(p);
        if k.is_identity() {
            return acc;
        }
    }
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();

    for case in 0..PROPERTY_CASES {
        let n = rng.gen_range(1..=4);
        let (m, den) = random_pd(&mut rng, n);
        let g = to_rational(&m, den);
        let inv = g.inverse().map_err(err)?;
        let inv_diag: Vec<f64> = (0..n).map(|i| {
            let x = &inv[(i, i)] * r(den);
            x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap()
        }).collect();
        let found = form_minimum(&GramForm::new(g).map_err(err)?).map_err(err)?.value;
        let brute = frac(brute_minimum(&m, &inv_diag), den);
        ensure(found == brute, || format!("(a) case {case}: {found} != {brute} for {m:?}/{den}"))?;
    }
    let t_a = start.elapsed();

    for case in 0..PROPERTY_CASES {
        let n = rng.gen_range(1..=5);
        let h = random_matrix(&mut rng, n, -3, 3);
        let c = h.mul(&h.transpose()).unwrap().add(&RationalMatrix::identity(n)).unwrap();
        let w0 = random_matrix(&mut rng, n, -4, 4).scale(&frac(1, rng.gen_range(1..=4)));
        let w = w0.add(&w0.transpose()).unwrap();
        let s = random_unimodular(&mut rng, n);
        let si = s.inverse().map_err(err)?;
        let c2 = s.transpose().mul(&c).unwrap().mul(&s).unwrap();
        let w2 = si.mul(&w).unwrap().mul(&si.transpose()).unwrap();
        let (a, b) = (w.trace_of_product(&c).unwrap(), w2.trace_of_product(&c2).unwrap());
        ensure(a == b, || format!("(b) case {case}: {a} != {b}"))?;
    }

    for case in 0..PROPERTY_CASES {
        let n = rng.gen_range(1..=4);
        let p = random_permutation(&mut rng, n);
        let a = commuting_pd(&random_matrix(&mut rng, n, -3, 3), &p);
        let h = random_matrix(&mut rng, n, -3, 3);
        let b = h.mul(&h.transpose()).unwrap().add(&RationalMatrix::identity(n)).unwrap();
        let pm: RationalMatrix = p.matrix();
        let ab = a.mul(&b).unwrap();
        let (with_p, without) = (ab.mul(&pm).unwrap().trace().unwrap(), ab.trace().unwrap());
        ensure(with_p <= without, || format!("(c) case {case}: {with_p} > {without}"))?;
        ensure((with_p == without) == p.is_identity(), || format!("(c) case {case}: equality at {p:?}"))?;
    }

    for case in 0..PROPERTY_CASES {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=6 / n);
        let p = random_permutation(&mut rng, n);
        let base = if rng.gen_bool(0.5) {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            u_matrix_ordered(&order).map_err(err)?.matrix().clone()
        } else {
            RationalMatrix::identity(n).scale(&r(rng.gen_range(1..=2)))
        };
        let action = PermutationAction::new(n, vec![p.clone()]).map_err(err)?;
        let w: WeightMatrix = symmetrize(&base, &action).map_err(err)?;
        let out = blowup_wm(&w, &p, m).map_err(err)?;
        ensure(out.certificate().value >= r(1), || format!("(d) case {case}: minimum {}", out.certificate().value))?;
        let again = form_minimum(&GramForm::new(out.matrix().clone()).map_err(err)?).map_err(err)?;
        ensure(again.value == out.certificate().value, || format!("(d) case {case}: certificate disagrees"))?;
    }

    let conductors = [(2u64, 2u64), (2, 4), (2, 8), (3, 3), (3, 9), (3, 27), (5, 5), (5, 25), (7, 7)];
    for case in 0..PROPERTY_CASES {
        let (p, q) = conductors[rng.gen_range(0..conductors.len())];
        let (k, l) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
        let rows = (0..k)
            .map(|_| {
                (0..l)
                    .map(|_| {
                        let terms: Vec<(i64, Integer)> = (0..rng.gen_range(0..4))
                            .map(|_| (rng.gen_range(0..q as i64), Integer::from(rng.gen_range(-5..=5))))
                            .collect();
                        CyclotomicInteger::from_powers(q, p, &terms).unwrap()
                    })
                    .collect()
            })
            .collect();
        let qm = CycMatrix::from_rows(rows).map_err(err)?;
        let spec = SubsectionSpec::trivial(p, q).map_err(err)?.with_trivial_action(l);
        let data = fourier_split(&qm, spec).map_err(err)?;
        ensure(data.q_matrix() == qm, || format!("(e) case {case}: reassembly differs"))?;
    }

    for (p, q) in [(2u64, 4u64), (2, 8), (3, 9), (2, 16), (5, 25), (3, 27)] {
        let phi = basis_len(q, p) as u64;
        for i in 1..=phi {
            let ip = iprime(i, q, p).map_err(err)?;
            ensure(q / p <= i + ip && i + ip <= phi, || format!("(f) q = {q}, i = {i}, i' = {ip}"))?;
        }
    }
    Ok(format!(
        "(a)-(e) {PROPERTY_CASES} cases each, (f) exhaustive; (a) took {t_a:.2?}, total {:.2?}",
        start.elapsed()
    ))
}

fn hks_chain() -> Outcome {
    let mut tuples = Vec::new();
    'outer: for p in [3u64, 5, 7] {
        for k in 1..=3u32 {
            let q = p.pow(k);
            for s in 0..k {
                for rr in (1..p).filter(|rr| (p - 1) % rr == 0) {
                    for d in k..=k + 1 {
                        tuples.push((p, q, s, rr, d));
                        if tuples.len() == 20 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    for &(p, q, s, rr, d) in &tuples {
        let n = p.pow(s) * rr;
        let spec = SubsectionSpec::cyclic_of_order(p, q, n).map_err(err)?;
        let c = CartanData::from_rows(vec![vec![(p.pow(d) / q) as i64]], p, None).map_err(err)?;
        let b = theorem_b_bound(&c, &spec, &u_matrix(1).map_err(err)?).map_err(err)?;
        let h = hks_bound(p, q, s, rr, d).map_err(err)?;
        ensure(h.value == b.value, || format!("p = {p}, q = {q}, s = {s}, r = {rr}, d = {d}: {} != {}", h.value, b.value))?;
    }
    ensure(tuples.len() == 20, || format!("only {} tuples", tuples.len()))?;
    Ok("hks_bound = theorem_b_bound on 20 tuples".into())
}

fn dade() -> Outcome {
    // (p, |u|, a) with a | p - 1 and a | φ(|u|)
    let subsections = [(3u64, 3u64, 2u64), (5, 25, 4), (7, 7, 3), (7, 49, 6), (5, 1, 1), (11, 11, 5), (2, 4, 1)];
    let mut grid: Vec<(usize, u64)> = (1..=6).flat_map(|l| (1..=10).map(move |m| (l, m))).collect();
    grid.push((1, 0));
    let mut realised = 0;
    for &(p, u, a) in &subsections {
        for &(l, m) in &grid {
            let quot = l as u64 * m + 1;
            let d_order = u * quot;
            let check = dade_cross_check(p, u, a, l, m).map_err(err)?;
            let product = (r(a as i64) + frac(u as i64 - 1, a as i64)) * r((l as u64 + m) as i64);
            ensure(check.value == product, || format!("l = {l}, m = {m}, |u| = {u}: {} != {product}", check.value))?;
            ensure(check.value <= r(d_order as i64), || format!("l = {l}, m = {m}: exceeds |D| = {d_order}"))?;
            let is_p_power = {
                let mut x = quot;
                while x % p == 0 {
                    x /= p;
                }
                x == 1
            };
            if is_p_power && (p - 1) % l as u64 == 0 && u > 1 {
                let prop = dade_proposition_bound(d_order, u, a, l as u64).map_err(err)?;
                ensure(prop.value == check.value, || format!("l = {l}, m = {m}: proposition {} != {}", prop.value, check.value))?;
                realised += 1;
            }
        }
    }
    ensure(realised > 0, || "no realisable parameter set".into())?;
    Ok(format!("cross-check = product <= |D| on {} grid points, {realised} through the proposition", grid.len() * subsections.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AGL(1,8): 5D = 10, form = 8, Wada = 10, < 1 s", agl18),
        ("A4 x A4: min C^-1 = 9/16, 5D = 16, < 5 s", a4xa4),
        ("q = 3 subsection of S3: all verifiers pass, theorem A = 3", s3_subsection),
        ("k0 of Z_q x| N table", k0_table),
        ("property suite", properties),
        ("HKS equals theorem B with C = (p^d/q)", hks_chain),
        ("Dade proposition equals its theorem A cross-check", dade),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {}  {name}  [{detail}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL  {}  {name}  [{e}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
