use std::fmt;

use num_traits::Zero;

use crate::arith::{gcd, prime_power_exponent};
use crate::bounds::SubsectionSpec;
use crate::exactmat::CartanData;
use crate::weights::Permutation;
use crate::{IntMatrix, Integer, Rational, RationalMatrix};

use super::cyclotomic::{basis_len, iprime};
use super::split::CycMatrix;
use super::{CyclotomicInteger, GenDecData, GendecError};

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// On failure, where it failed; on success, optional context.
    pub detail: String,
}

/// The outcome of a batch of checks. Mathematical failures are recorded
/// here rather than returned as errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status}  {}", c.name)?;
            } else {
                writeln!(f, "{status}  {}  [{}]", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn check_cartan(data: &GenDecData, c_bar: &CartanData) -> Result<(), GendecError> {
    if c_bar.l() != data.l() {
        return Err(GendecError::Domain(format!(
            "Cartan matrix of size {} for a matrix with l = {}",
            c_bar.l(),
            data.l()
        )));
    }
    Ok(())
}

/// `P_δ`, the identity when no action on `IBr(b)` is given.
fn perm_of(spec: &SubsectionSpec, delta: u64, l: usize) -> Permutation {
    spec.ibr_permutation(delta).cloned().unwrap_or_else(|| Permutation::identity(l))
}

fn units(q: u64) -> Vec<u64> {
    if q == 1 {
        return vec![0];
    }
    (1..q).filter(|&g| gcd(g, q) == 1).collect()
}

/// `a^t b` for matrices over `Z[ζ]`.
fn cyc_gram(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let zero = CyclotomicInteger::zero(a[(0, 0)].conductor(), a[(0, 0)].prime()).expect("valid conductor");
    CycMatrix::from_fn(a.cols(), b.cols(), |i, j| {
        (0..a.rows()).fold(zero.clone(), |acc, r| &acc + &(&a[(r, i)] * &b[(r, j)]))
    })
}

fn cyc_map(m: &CycMatrix, gamma: i64) -> CycMatrix {
    m.map(|x| x.galois_apply(gamma).expect("unit checked by caller"))
}

fn embed(m: &IntMatrix, q: u64, p: u64) -> CycMatrix {
    m.map(|x| CyclotomicInteger::from_integer(q, p, x.clone()).expect("valid conductor"))
}

fn first_mismatch<T: PartialEq + fmt::Display>(lhs: &crate::Matrix<T>, rhs: &crate::Matrix<T>) -> Option<String> {
    for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            if lhs[(r, c)] != rhs[(r, c)] {
                return Some(format!("entry ({}, {}): {} != {}", r + 1, c + 1, lhs[(r, c)], rhs[(r, c)]));
            }
        }
    }
    None
}

fn record<T: PartialEq + fmt::Display>(
    report: &mut VerificationReport,
    name: String,
    lhs: &crate::Matrix<T>,
    rhs: &crate::Matrix<T>,
) {
    match first_mismatch(lhs, rhs) {
        None => report.push(name, true, ""),
        Some(d) => report.push(name, false, d),
    }
}

/// Checks `Q^t conj(Q) = q C̄`, `C̄ P_δ = P_δ C̄` and `δ(Q) = Q P_δ` for
/// `δ ∈ 𝒩`, and `γ(Q)^t conj(δ(Q))` for all Galois elements `γ, δ`:
/// `q C̄ P_{γ^{-1}δ}` if `γ^{-1}δ ∈ 𝒩`, else `0`.
///
/// Since `γ(Q)^t conj(δ(Q)) = γ(Q^t conj(ε(Q)))` with `ε = γ^{-1}δ` and the
/// right side is rational, one check per `ε` covers every pair.
pub fn verify_orthogonality(data: &GenDecData, c_bar: &CartanData) -> Result<VerificationReport, GendecError> {
    check_cartan(data, c_bar)?;
    let (q, p, l) = (data.q(), data.p(), data.l());
    let spec = data.spec();
    let qm = data.q_matrix();
    let c = c_bar.int_matrix();
    let qc = c.scale(&Integer::from(q));
    let mut report = VerificationReport::default();

    let gram = cyc_gram(&qm, &qm.map(CyclotomicInteger::conj));
    record(&mut report, "Q^t conj(Q) = q C".into(), &gram, &embed(&qc, q, p));

    for &delta in spec.elements() {
        let pd: IntMatrix = perm_of(spec, delta, l).matrix();
        record(&mut report, format!("C P_{delta} = P_{delta} C"), &c.mul(&pd)?, &pd.mul(&c)?);
        let lhs = cyc_map(&qm, delta as i64);
        let rhs = CycMatrix::from_fn(qm.rows(), l, |r, col| qm[(r, perm_of(spec, delta, l).apply(col))].clone());
        record(&mut report, format!("{delta}(Q) = Q P_{delta}"), &lhs, &rhs);
    }

    for eps in units(q) {
        let lhs = cyc_gram(&qm, &cyc_map(&qm, -(eps as i64)));
        let in_n = spec.elements().contains(&eps);
        let rhs = if in_n {
            embed(&qc.mul(&perm_of(spec, eps, l).matrix())?, q, p)
        } else {
            embed(&IntMatrix::zeros(l, l), q, p)
        };
        let name = if in_n {
            format!("g(Q)^t conj(d(Q)) = q C P_{eps} for g^-1 d = {eps}")
        } else {
            format!("g(Q)^t conj(d(Q)) = 0 for g^-1 d = {eps} outside N")
        };
        record(&mut report, name, &lhs, &rhs);
    }
    Ok(report)
}

/// `[jδ ≡ i] - [jδ ≡ -i'] + [j'δ ≡ i'] - [j'δ ≡ -i]` modulo `q`.
pub fn longeq_indicator(q: u64, p: u64, i: u64, j: u64, delta: u64) -> Result<i64, GendecError> {
    let ip = iprime(i, q, p)?;
    let jp = iprime(j, q, p)?;
    let m = |a: u64| a % q;
    let neg = |a: u64| (q - a % q) % q;
    let jd = m(j * delta);
    let jpd = m(jp * delta);
    Ok((jd == m(i)) as i64 - (jd == neg(ip)) as i64 + (jpd == m(ip)) as i64 - (jpd == neg(i)) as i64)
}

/// `C̄ Σ_{δ} P_δ · indicator(i, j, δ mod q)` over the given elements.
fn longeq_rhs(
    c: &IntMatrix,
    spec: &SubsectionSpec,
    elements: &[u64],
    q: u64,
    i: u64,
    j: u64,
) -> Result<IntMatrix, GendecError> {
    let l = c.rows();
    let mut acc = IntMatrix::zeros(l, l);
    for &delta in elements {
        let ind = longeq_indicator(q, spec.p(), i, j, delta % q)?;
        if ind != 0 {
            let pd: IntMatrix = perm_of(spec, delta, l).matrix();
            acc = acc.add(&pd.scale(&Integer::from(ind)))?;
        }
    }
    Ok(c.mul(&acc)?)
}

fn gram_ij(data: &GenDecData, i: usize, j: usize) -> IntMatrix {
    data.a(i).transpose().mul(data.a(j)).expect("shapes agree")
}

#[derive(Default)]
struct Tally {
    total: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn see(&mut self, i: usize, j: usize, lhs: &IntMatrix, rhs: &IntMatrix) {
        self.total += 1;
        if let Some(d) = first_mismatch(lhs, rhs) {
            self.failed += 1;
            self.first.get_or_insert_with(|| format!("i = {i}, j = {j}: {d}"));
        }
    }

    fn finish(self, report: &mut VerificationReport, name: &str) {
        let detail = match self.first {
            Some(d) => format!("{} of {} pairs fail; first {d}", self.failed, self.total),
            None => format!("{} pairs", self.total),
        };
        report.push(name, self.failed == 0, detail);
    }
}

/// Checks `A_i^t A_j = C̄ Σ_{δ∈𝒩} P_δ ([jδ≡i] - [jδ≡-i'] + [j'δ≡i'] - [j'δ≡-i])`
/// for all `i, j`, plus the block structure that follows from it:
/// for `p > 2`, `p ∤ n`, `q > p` the `I_p`/`I_p'` blocks are orthogonal and
/// the `I_p` block is the same identity at `q/p`; for `n_p > 1` the
/// `n_p | i` and `n_p ∤ i` blocks are orthogonal and the first is
/// `P_{𝒩_p}` times the identity at `q/n_p` for `𝒩_p'`.
pub fn verify_longeq(data: &GenDecData, c_bar: &CartanData) -> Result<VerificationReport, GendecError> {
    check_cartan(data, c_bar)?;
    let (q, p) = (data.q(), data.p());
    let spec = data.spec();
    let c = c_bar.int_matrix();
    let mut report = VerificationReport::default();
    if q == 1 {
        record(&mut report, "A_1^t A_1 = C".into(), &gram_ij(data, 1, 1), &c);
        return Ok(report);
    }
    let phi = basis_len(q, p);
    let mut main = Tally::default();
    for i in 1..=phi {
        for j in 1..=phi {
            let rhs = longeq_rhs(&c, spec, spec.elements(), q, i as u64, j as u64)?;
            main.see(i, j, &gram_ij(data, i, j), &rhs);
        }
    }
    main.finish(&mut report, "A_i^t A_j = C sum_d P_d [indicators]");

    let zero = IntMatrix::zeros(c.rows(), c.cols());
    let n_p = spec.n_p();
    if p > 2 && n_p == 1 && q > p {
        let mut vanish = Tally::default();
        let mut recursion = Tally::default();
        for i in 1..=phi {
            for j in 1..=phi {
                let (pi, pj) = (i as u64 % p == 0, j as u64 % p == 0);
                if pi != pj {
                    vanish.see(i, j, &gram_ij(data, i, j), &zero);
                } else if pi {
                    let (i2, j2) = (i as u64 / p, j as u64 / p);
                    let rhs = longeq_rhs(&c, spec, spec.elements(), q / p, i2, j2)?;
                    recursion.see(i, j, &gram_ij(data, i, j), &rhs);
                }
            }
        }
        vanish.finish(&mut report, "A_i^t A_j = 0 for exactly one of i, j in I_p");
        recursion.finish(&mut report, "Delta_p = A_{q/p}^t A_{q/p}");
    }
    if p > 2 && n_p > 1 {
        let q1 = q / n_p;
        let sylow: Vec<u64> = spec.elements().iter().copied().filter(|&d| is_p_element(d, q, p)).collect();
        let rest: Vec<u64> = spec.elements().iter().copied().filter(|&d| order_mod(d, q) % p != 0).collect();
        let l = c.rows();
        let mut p_sylow = IntMatrix::zeros(l, l);
        for &d in &sylow {
            p_sylow = p_sylow.add(&perm_of(spec, d, l).matrix())?;
        }
        let mut vanish = Tally::default();
        let mut split = Tally::default();
        for i in 1..=phi {
            for j in 1..=phi {
                let (ii, jj) = (i as u64 % n_p == 0, j as u64 % n_p == 0);
                if ii != jj {
                    vanish.see(i, j, &gram_ij(data, i, j), &zero);
                } else if ii {
                    let rhs = longeq_rhs(&c, spec, &rest, q1, i as u64 / n_p, j as u64 / n_p)?;
                    split.see(i, j, &gram_ij(data, i, j), &p_sylow.mul(&rhs)?);
                }
            }
        }
        vanish.finish(&mut report, "A_i^t A_j = 0 for exactly one of i, j in I_1");
        split.finish(&mut report, "Delta_1 = (1 x P_Np) A_{q/n_p}^t A_{q/n_p}");
    }
    Ok(report)
}

fn order_mod(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 % q {
        x = x * g % q;
        k += 1;
    }
    k
}

fn is_p_element(g: u64, q: u64, p: u64) -> bool {
    prime_power_exponent(order_mod(g, q), p).is_some()
}

/// `rank(𝒜_q) = l φ(q) / n`.
pub fn rank_check(data: &GenDecData) -> VerificationReport {
    let (q, p) = (data.q(), data.p());
    let n = data.spec().n() as usize;
    let target = data.l() * basis_len(q, p);
    let rank = data.stacked().rank();
    let mut report = VerificationReport::default();
    if target % n != 0 {
        report.push("rank A_q = l phi(q)/n", false, format!("n = {n} does not divide l phi(q) = {target}"));
    } else {
        report.push(
            "rank A_q = l phi(q)/n",
            rank == target / n,
            format!("rank {rank}, expected {}", target / n),
        );
    }
    report
}

/// `C̃ = p^d C̄^{-1}` with `p^d` the largest elementary divisor of `C̄`.
pub fn c_tilde(c_bar: &CartanData) -> Result<RationalMatrix, GendecError> {
    let pd = Rational::from_integer(c_bar.largest_elementary_divisor());
    Ok(c_bar.matrix().inverse()?.scale(&pd))
}

/// Whether `d C̃ conj(d)^t` has `p`-adic valuation `0`, tested through its
/// image under `ζ ↦ 1` in `Z/p`.
pub fn height_zero_valuation_check(
    row: &[CyclotomicInteger],
    c_tilde: &RationalMatrix,
    p: u64,
    q: u64,
) -> Result<bool, GendecError> {
    if !c_tilde.is_square() || c_tilde.rows() != row.len() {
        return Err(GendecError::Domain(format!(
            "row of length {} against C~ of shape {:?}",
            row.len(),
            c_tilde.shape()
        )));
    }
    if let Some(e) = row.iter().find(|e| e.conductor() != q || e.prime() != p) {
        return Err(GendecError::Domain(format!("entry of conductor {} for q = {q}", e.conductor())));
    }
    let ct = c_tilde.try_map(|x| {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(GendecError::Precondition(format!("C~ has the non-integral entry {x}")))
        }
    })?;
    let mut x = CyclotomicInteger::zero(q, p)?;
    for (a, da) in row.iter().enumerate() {
        if da.is_zero() {
            continue;
        }
        for (b, db) in row.iter().enumerate() {
            if !ct[(a, b)].is_zero() {
                x = &x + &(&(da * &db.conj()) * &ct[(a, b)]);
            }
        }
    }
    Ok(x.residue_mod_p() != 0)
}

/// Valuation tests on the rows of `Q`. With `heights`, every height-zero
/// row must pass and be nonzero, and for `p ∤ n` every row must be nonzero.
pub fn valuation_checks(
    data: &GenDecData,
    c_bar: &CartanData,
    heights: Option<&[u32]>,
) -> Result<VerificationReport, GendecError> {
    check_cartan(data, c_bar)?;
    let (q, p) = (data.q(), data.p());
    let ct = c_tilde(c_bar)?;
    let qm = data.q_matrix();
    let mut passing = Vec::with_capacity(data.k());
    for r in 0..data.k() {
        passing.push(height_zero_valuation_check(qm.row(r), &ct, p, q)?);
    }
    let nonzero: Vec<bool> = (0..data.k()).map(|r| qm.row(r).iter().any(|e| !e.is_zero())).collect();
    let mut report = VerificationReport::default();
    let bad = (0..data.k()).find(|&r| passing[r] && !nonzero[r]);
    report.push(
        "rows with valuation 0 are nonzero",
        bad.is_none(),
        format!(
            "{} of {} rows have valuation 0, {} rows nonzero",
            passing.iter().filter(|&&b| b).count(),
            data.k(),
            nonzero.iter().filter(|&&b| b).count()
        ),
    );
    if let Some(h) = heights {
        if h.len() != data.k() {
            return Err(GendecError::Domain(format!("{} heights for {} rows", h.len(), data.k())));
        }
        let failing: Vec<usize> = (0..data.k()).filter(|&r| h[r] == 0 && !passing[r]).map(|r| r + 1).collect();
        report.push(
            "height-zero rows have valuation 0",
            failing.is_empty(),
            if failing.is_empty() { String::new() } else { format!("rows {failing:?}") },
        );
        if data.spec().n() % p != 0 {
            let zero_rows: Vec<usize> = (0..data.k()).filter(|&r| !nonzero[r]).map(|r| r + 1).collect();
            report.push(
                "all rows nonzero (u central)",
                zero_rows.is_empty(),
                if zero_rows.is_empty() { String::new() } else { format!("rows {zero_rows:?}") },
            );
        }
    }
    Ok(report)
}

/// Runs every verifier and concatenates the reports.
pub fn verify_all(
    data: &GenDecData,
    c_bar: &CartanData,
    heights: Option<&[u32]>,
) -> Result<VerificationReport, GendecError> {
    let mut report = verify_orthogonality(data, c_bar)?;
    report.extend(verify_longeq(data, c_bar)?);
    report.extend(rank_check(data));
    report.extend(valuation_checks(data, c_bar, heights)?);
    Ok(report)
}
