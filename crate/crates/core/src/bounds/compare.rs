use crate::exactmat::CartanData;
use crate::weights::{from_quadratic_form, weight_candidates, PermutationAction, QuadraticForm, WeightMatrix};
use crate::{Integer, Rational};

use super::{
    brauer_5d_bound, classical_bounds, dominated_cartan, hks_bound, kw_bound, refined_bound, theorem_a_bound,
    theorem_b_bound, BoundReport, BoundsError, Normalization, SubsectionSpec, Target,
};

/// Everything known about one block and subsection.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockData {
    pub label: String,
    /// Cartan matrix of `b`, i.e. `q` times that of `b̄`.
    c_b: CartanData,
    c_bar: CartanData,
    pub spec: SubsectionSpec,
    pub forms: Vec<QuadraticForm>,
    /// 1-based ordering for Wada's bound.
    pub ordering: Option<Vec<usize>>,
    /// 1-based set partition for the partition bound.
    pub partition: Option<Vec<Vec<usize>>>,
    pub known_kb: Option<u64>,
}

impl BlockData {
    /// Validates the Cartan matrix against `spec` and derives both
    /// normalizations from whichever was supplied.
    pub fn new(
        label: impl Into<String>,
        cartan: CartanData,
        normalization: Normalization,
        spec: SubsectionSpec,
    ) -> Result<Self, BoundsError> {
        if cartan.p() != spec.p() {
            return Err(BoundsError::Inconsistent(format!(
                "Cartan matrix given for p = {} but subsection for p = {}",
                cartan.p(),
                spec.p()
            )));
        }
        let q = spec.q();
        let (c_b, c_bar) = match normalization {
            Normalization::B => {
                let c_bar = dominated_cartan(&cartan, normalization, q)?;
                let k = crate::arith::prime_power_exponent(q, spec.p()).unwrap_or(0);
                let c_bar = match cartan.defect() {
                    Some(d) if d >= k => c_bar.with_defect(d - k)?,
                    _ => c_bar,
                };
                (cartan.clone(), c_bar)
            }
            Normalization::BBar => {
                let c_b = cartan.multiplied_by(q)?;
                let c_b = match cartan.defect() {
                    Some(d) => c_b.with_defect(d + crate::arith::prime_power_exponent(q, spec.p()).unwrap_or(0))?,
                    None => c_b,
                };
                (c_b, cartan)
            }
        };
        if let Some(action) = spec.ibr_action() {
            if action.degree() != c_b.l() {
                return Err(BoundsError::Inconsistent(format!(
                    "action of degree {} but l(b) = {}",
                    action.degree(),
                    c_b.l()
                )));
            }
        }
        Ok(BlockData {
            label: label.into(),
            c_b,
            c_bar,
            spec,
            forms: Vec::new(),
            ordering: None,
            partition: None,
            known_kb: None,
        })
    }

    pub fn cartan_b(&self) -> &CartanData {
        &self.c_b
    }

    pub fn cartan_b_bar(&self) -> &CartanData {
        &self.c_bar
    }

    pub fn l(&self) -> usize {
        self.c_b.l()
    }

    /// The defect `d` of `b`: as given, or read off the largest elementary
    /// divisor of `C_b` when that is a power of `p`.
    pub fn defect(&self) -> Option<u32> {
        self.c_b.defect().or_else(|| {
            let e = u64::try_from(self.c_b.largest_elementary_divisor()).ok()?;
            crate::arith::prime_power_exponent(e, self.c_b.p())
        })
    }

    /// `p^d`, falling back to the largest elementary divisor of `C_b`.
    pub fn p_to_defect(&self) -> Integer {
        match self.defect() {
            Some(d) => Integer::from(self.c_b.p()).pow(d),
            None => self.c_b.largest_elementary_divisor(),
        }
    }
}

/// The outcome of comparing the best `k(B)` bound with `p^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureCheck {
    pub p_to_defect: Integer,
    pub best: Rational,
    /// `best <= p^d`, i.e. the bounds alone imply `k(B) <= p^d` here.
    pub implied: bool,
}

/// Every applicable bound for one block, in a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub label: String,
    pub rows: Vec<BoundReport>,
    /// Index of the least `k(B)` bound.
    pub best_k: Option<usize>,
    /// Index of the least bound on `k0(B)`; every `k(B)` bound counts.
    pub best_k0: Option<usize>,
    pub conjecture: Option<ConjectureCheck>,
    pub known_kb: Option<u64>,
    /// Names of `k(B)` bounds below the known value of `k(B)`.
    pub violations: Vec<String>,
}

impl Comparison {
    pub fn best_k_report(&self) -> Option<&BoundReport> {
        self.best_k.map(|i| &self.rows[i])
    }

    pub fn best_k0_report(&self) -> Option<&BoundReport> {
        self.best_k0.map(|i| &self.rows[i])
    }
}

/// The weight with least `tr(W C̄)` among the candidates and the bundle's forms.
pub fn best_weight(data: &BlockData) -> Result<WeightMatrix, BoundsError> {
    let l = data.l();
    let trivial = PermutationAction::trivial(l);
    let action = data.spec.ibr_action().unwrap_or(&trivial);
    let mut pool: Vec<(Rational, WeightMatrix)> = weight_candidates(&data.c_bar, action)?
        .into_iter()
        .map(|c| (c.trace, c.weight))
        .collect();
    for (i, form) in data.forms.iter().enumerate() {
        let w = from_quadratic_form(form)?.with_provenance(format!("form_{}", i + 1));
        pool.push((w.matrix().trace_of_product(data.c_bar.matrix())?, w));
    }
    pool.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.provenance().cmp(b.1.provenance())));
    Ok(pool.into_iter().next().expect("candidate list is never empty").1)
}

/// Evaluates every bound that applies to `data`.
///
/// Rows that need `u` central in a defect group (Theorem A, the inverse
/// Cartan bound, form bounds on `C_b`) are emitted only when `p ∤ |𝒩|`;
/// Brandt's and the partition bound only for `q = 1`.
pub fn compare_all(data: &BlockData) -> Result<Comparison, BoundsError> {
    let spec = &data.spec;
    let (p, q) = (spec.p(), spec.q());
    let major = spec.n() % p != 0;
    let w = best_weight(data)?;
    let mut rows = Vec::new();
    if major {
        rows.push(theorem_a_bound(&data.c_bar, spec, &w)?);
    }
    rows.push(theorem_b_bound(&data.c_bar, spec, &w)?);
    if p > 2 && spec.n_p() == 1 && spec.has_ibr_action() {
        rows.push(refined_bound(&data.c_bar, spec, &w)?);
    }
    if let (true, Some(d)) = (p > 2 && data.l() == 1, data.defect()) {
        let s = crate::arith::prime_power_exponent(spec.n_p(), p).unwrap_or(0);
        rows.push(hks_bound(p, q, s, spec.n_p_prime(), d)?);
    }
    if major {
        rows.push(brauer_5d_bound(&data.c_b)?);
        for (i, form) in data.forms.iter().enumerate() {
            let mut r = kw_bound(&data.c_b, form)?;
            r.name = format!("kw_form_{}", i + 1);
            rows.push(r);
        }
        let classical = classical_bounds(&data.c_b, data.ordering.as_deref(), data.partition.as_deref())?;
        rows.extend(classical.into_iter().filter(|r| q == 1 || matches!(r.name.as_str(), "trace" | "wada" | "brauer_feit")));
    }

    let best_k = argmin(&rows, |r| r.target == Target::K);
    let best_k0 = argmin(&rows, |_| true);
    let conjecture = best_k.filter(|_| major).map(|i| {
        let pd = data.p_to_defect();
        let best = rows[i].value.clone();
        ConjectureCheck { implied: best <= Rational::from_integer(pd.clone()), p_to_defect: pd, best }
    });
    let violations = match data.known_kb {
        Some(k) => rows
            .iter()
            .filter(|r| r.target == Target::K && r.value < Rational::from_integer(k.into()))
            .map(|r| r.name.clone())
            .collect(),
        None => Vec::new(),
    };
    Ok(Comparison { label: data.label.clone(), rows, best_k, best_k0, conjecture, known_kb: data.known_kb, violations })
}

fn argmin(rows: &[BoundReport], keep: impl Fn(&BoundReport) -> bool) -> Option<usize> {
    rows.iter()
        .enumerate()
        .filter(|(_, r)| keep(r))
        .min_by(|a, b| a.1.value.cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
}
