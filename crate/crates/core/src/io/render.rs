use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::bounds::{BoundReport, Comparison};
use crate::exactmat::format_rational;
use crate::gendec::VerificationReport;
use crate::lattice::LatticeMinimum;
use crate::weights::WeightMatrix;
use crate::{Rational, RationalMatrix};

/// `x` rounded half away from zero to `digits` decimal places.
pub fn decimal(x: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let n: BigInt = x.numer().abs() * &scale * 2 + x.denom();
    let scaled = n.div_floor(&(x.denom() * BigInt::from(2)));
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    let (int, frac) = scaled.div_rem(&scale);
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

fn bound_record(b: &BoundReport) -> Value {
    json!({
        "name": b.name,
        "target": b.target.to_string(),
        "value": format_rational(&b.value),
        "decimal": decimal(&b.value, 6),
        "integer_bound": b.integer_bound().to_string(),
        "alternate": b.alternate.as_ref().map(format_rational),
        "flags": b.flags,
        "inputs": b.inputs,
        "formula": b.formula,
    })
}

pub fn comparison_record(c: &Comparison) -> Value {
    let pick = |i: Option<usize>| {
        i.map(|i| json!({ "name": c.rows[i].name, "value": format_rational(&c.rows[i].value) }))
    };
    json!({
        "label": c.label,
        "rows": c.rows.iter().map(bound_record).collect::<Vec<_>>(),
        "best_k": pick(c.best_k),
        "best_k0": pick(c.best_k0),
        "conjecture": c.conjecture.as_ref().map(|k| json!({
            "p_to_defect": k.p_to_defect.to_string(),
            "best": format_rational(&k.best),
            "implied": k.implied,
        })),
        "known_kb": c.known_kb,
        "violations": c.violations,
    })
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    for r in rows {
        out += &line(r.clone());
    }
    out
}

pub fn comparison_table(c: &Comparison) -> String {
    let rows: Vec<Vec<String>> = c
        .rows
        .iter()
        .map(|b| {
            let flags: Vec<String> = b.flags.iter().filter(|(_, &v)| v).map(|(k, _)| k.clone()).collect();
            vec![
                b.name.clone(),
                b.target.to_string(),
                format_rational(&b.value),
                decimal(&b.value, 6),
                b.integer_bound().to_string(),
                b.alternate.as_ref().map(format_rational).unwrap_or_else(|| "-".into()),
                if flags.is_empty() { "-".into() } else { flags.join(",") },
            ]
        })
        .collect();
    let mut out = if c.label.is_empty() { String::new() } else { format!("block: {}\n", c.label) };
    out += &table(&["bound", "target", "value", "decimal", "floor", "alternate", "flags"], &rows);
    if let Some(b) = c.best_k_report() {
        out += &format!("best k(B) bound: {} = {}\n", b.name, format_rational(&b.value));
    }
    if let Some(b) = c.best_k0_report() {
        out += &format!("best k0(B) bound: {} = {}\n", b.name, format_rational(&b.value));
    }
    if let Some(k) = &c.conjecture {
        let verdict = if k.implied { "implies" } else { "does not imply" };
        out += &format!("best bound {} {verdict} k(B) <= p^d = {}\n", format_rational(&k.best), k.p_to_defect);
    }
    if let Some(kb) = c.known_kb {
        if c.violations.is_empty() {
            out += &format!("known k(B) = {kb}, every bound respects it\n");
        } else {
            out += &format!("known k(B) = {kb}, violated by: {}\n", c.violations.join(", "));
        }
    }
    out
}

pub fn verification_record(r: &VerificationReport) -> Value {
    json!({
        "all_passed": r.all_passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn verification_table(r: &VerificationReport) -> String {
    let mut out = r.to_string();
    let failed = r.failures().count();
    out += &if failed == 0 {
        format!("all {} checks passed\n", r.checks.len())
    } else {
        format!("{failed} of {} checks failed\n", r.checks.len())
    };
    out
}

pub fn lattice_record(m: &LatticeMinimum) -> Value {
    json!({
        "minimum": format_rational(&m.value),
        "decimal": decimal(&m.value, 6),
        "witness": m.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "minimizer_count": m.minimizer_count,
    })
}

pub fn lattice_table(m: &LatticeMinimum) -> String {
    let w: Vec<String> = m.witness.iter().map(|x| x.to_string()).collect();
    format!(
        "minimum: {} ({})\nwitness: ({})\nminimizers up to sign: {}\n",
        format_rational(&m.value),
        decimal(&m.value, 6),
        w.join(", "),
        m.minimizer_count
    )
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.iter_rows().map(|r| r.iter().map(format_rational).collect()).collect()
}

pub fn weight_record(w: &WeightMatrix, trace: Option<&Rational>) -> Value {
    json!({
        "provenance": w.provenance(),
        "matrix": matrix_rows(w.matrix()),
        "minimum": format_rational(&w.certificate().value),
        "witness": w.certificate().witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "trace": trace.map(format_rational),
    })
}

pub fn weight_table(w: &WeightMatrix, trace: Option<&Rational>) -> String {
    let rows = matrix_rows(w.matrix());
    let header: Vec<String> = (1..=rows.len()).map(|i| i.to_string()).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut out = format!("weight: {}\n", w.provenance());
    out += &table(&header, &rows);
    out += &format!("certified minimum: {}\n", format_rational(&w.certificate().value));
    if let Some(t) = trace {
        out += &format!("tr(WC): {} ({})\n", format_rational(t), decimal(t, 6));
    }
    out
}
