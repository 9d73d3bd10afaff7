use std::collections::BTreeSet;

use num_traits::Zero;

use crate::exactmat::{format_rational, CartanData};
use crate::weights::{from_quadratic_form, QuadraticForm};
use crate::{Integer, Rational};

use super::{BoundReport, BoundsError, Target};

fn rat(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// Checks that `ordering` lists `1..=l` once each and converts to 0-based.
pub fn validate_ordering(ordering: &[usize], l: usize) -> Result<Vec<usize>, BoundsError> {
    let set: BTreeSet<_> = ordering.iter().copied().collect();
    if ordering.len() != l || set != (1..=l).collect() {
        return Err(BoundsError::Domain(format!("ordering {ordering:?} is not a permutation of 1..={l}")));
    }
    Ok(ordering.iter().map(|i| i - 1).collect())
}

/// Checks that `partition` splits `1..=l` into nonempty disjoint blocks and
/// converts to 0-based.
pub fn validate_partition(partition: &[Vec<usize>], l: usize) -> Result<Vec<Vec<usize>>, BoundsError> {
    let mut seen = BTreeSet::new();
    for block in partition {
        if block.is_empty() {
            return Err(BoundsError::Domain("partition contains an empty block".into()));
        }
        for &i in block {
            if i < 1 || i > l || !seen.insert(i) {
                return Err(BoundsError::Domain(format!("partition {partition:?} is not a set partition of 1..={l}")));
            }
        }
    }
    if seen.len() != l {
        return Err(BoundsError::Domain(format!("partition {partition:?} does not cover 1..={l}")));
    }
    Ok(partition.iter().map(|b| b.iter().map(|i| i - 1).collect()).collect())
}

/// The trace bound, Brandt's bound, Wada's bound along `ordering` (1-based,
/// identity if absent), the partition bound if `partition` is given, and
/// `p^{2d}` if the defect is known.
pub fn classical_bounds(
    c: &CartanData,
    ordering: Option<&[usize]>,
    partition: Option<&[Vec<usize>]>,
) -> Result<Vec<BoundReport>, BoundsError> {
    let l = c.l();
    let m = c.matrix();
    let order = match ordering {
        Some(o) => validate_ordering(o, l)?,
        None => (0..l).collect(),
    };
    let tr = m.trace()?;
    let mut out = vec![
        BoundReport::new("trace", Target::K, tr.clone(), "tr(C)"),
        BoundReport::new("brandt", Target::K, &tr - rat(l) + rat(1), "tr(C) - l + 1").input("l", l),
    ];
    let chain = order.windows(2).fold(Rational::zero(), |acc, w| acc + &m[(w[0], w[1])]);
    let label: Vec<String> = order.iter().map(|i| (i + 1).to_string()).collect();
    out.push(
        BoundReport::new("wada", Target::K, &tr - chain, "tr(C) - sum c(o(i), o(i+1))")
            .input("ordering", label.join(",")),
    );
    if let Some(partition) = partition {
        let blocks = validate_partition(partition, l)?;
        let mut sum = Rational::zero();
        for b in &blocks {
            sum += m.select(b, b)?.determinant()?;
        }
        let value = sum - rat(blocks.len()) + rat(1);
        out.push(
            BoundReport::new("partition", Target::K, value, "sum det(C_i) - m + 1").input("partition", format!("{partition:?}")),
        );
    }
    if let Some(d) = c.defect() {
        let value = Rational::from_integer(Integer::from(c.p()).pow(2 * d));
        out.push(BoundReport::new("brauer_feit", Target::K, value, "p^(2d)").input("d", d));
    }
    Ok(out)
}

/// `k(B) <= Σ_{i<=j} q_ij c_ij` for a positive definite integral form `q`.
pub fn kw_bound(c: &CartanData, form: &QuadraticForm) -> Result<BoundReport, BoundsError> {
    if form.dim() != c.l() {
        return Err(BoundsError::Domain(format!("form in {} variables for a {}x{} Cartan matrix", form.dim(), c.l(), c.l())));
    }
    let w = from_quadratic_form(form)?;
    let m = c.matrix();
    let value = form
        .terms()
        .iter()
        .fold(Rational::zero(), |acc, &(i, j, q)| acc + Rational::from_integer(q.into()) * &m[(i - 1, j - 1)]);
    let tr = w.matrix().trace_of_product(m)?;
    if tr != value {
        return Err(BoundsError::Internal(format!(
            "form sum {} differs from tr(WC) = {}",
            format_rational(&value),
            format_rational(&tr)
        )));
    }
    let terms: Vec<String> = form.terms().iter().map(|(i, j, q)| format!("({i},{j},{q})")).collect();
    Ok(BoundReport::new("kw", Target::K, value, "sum_{i<=j} q_ij c_ij").input("form", terms.join(" ")))
}
