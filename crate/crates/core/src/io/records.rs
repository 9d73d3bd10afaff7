use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power_exponent;
use crate::bounds::{dominated_cartan, BlockData, Normalization, SubsectionSpec};
use crate::exactmat::{parse_rational, CartanData};
use crate::gendec::{basis_len, fourier_split, CycMatrix, CyclotomicInteger, GenDecData};
use crate::weights::{Permutation, QuadraticForm};
use crate::{IntMatrix, Integer, Rational, RationalMatrix};

use super::FormatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationTag {
    /// Cartan matrix of `b`.
    B,
    /// Cartan matrix of the dominated block `b̄`.
    BBar,
}

impl From<NormalizationTag> for Normalization {
    fn from(t: NormalizationTag) -> Self {
        match t {
            NormalizationTag::B => Normalization::B,
            NormalizationTag::BBar => Normalization::BBar,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanRecord {
    pub normalization: NormalizationTag,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl CartanRecord {
    pub fn new(normalization: NormalizationTag, entries: Vec<Vec<i64>>) -> Self {
        CartanRecord { normalization, rows: entries.len(), cols: entries.first().map_or(0, Vec::len), entries }
    }

    pub fn from_cartan(normalization: NormalizationTag, c: &CartanData) -> Self {
        let entries = c
            .int_matrix()
            .iter_rows()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("Cartan entries fit in i64")).collect())
            .collect();
        Self::new(normalization, entries)
    }

    /// `defect` is that of `b`; for a `b_bar` matrix it is lowered by `log_p q`.
    fn to_cartan(&self, p: u64, q: u64, defect: Option<u32>) -> Result<CartanData, FormatError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(FormatError::field("cartan.entries", format!("expected {} x {}", self.rows, self.cols)));
        }
        let k = prime_power_exponent(q, p)
            .ok_or_else(|| FormatError::field("q", format!("{q} is not a power of p = {p}")))?;
        let defect = match (self.normalization, defect) {
            (NormalizationTag::BBar, Some(d)) => Some(
                d.checked_sub(k)
                    .ok_or_else(|| FormatError::field("defect", format!("defect {d} is below log_p q = {k}")))?,
            ),
            (_, d) => d,
        };
        let m = RationalMatrix::from_fn(self.rows, self.cols, |r, c| Rational::from_integer(self.entries[r][c].into()));
        CartanData::new(m, p, defect).map_err(|e| FormatError::field("cartan", e))
    }
}

/// The fusion quotient `𝒩` and its action on `IBr(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecRecord {
    pub n_generators: Vec<i64>,
    /// One 1-based image array per generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ibr_action: Option<Vec<Vec<usize>>>,
}

fn build_spec(
    p: u64,
    q: u64,
    n_generators: &[i64],
    ibr_action: Option<&[Vec<usize>]>,
    l: usize,
    prefix: &str,
) -> Result<SubsectionSpec, FormatError> {
    let spec =
        SubsectionSpec::new(p, q, n_generators).map_err(|e| FormatError::field(format!("{prefix}n_generators"), e))?;
    let Some(images) = ibr_action else {
        return Ok(spec);
    };
    let field = format!("{prefix}ibr_action");
    if images.len() != n_generators.len() {
        return Err(FormatError::field(
            field,
            format!("{} permutations for {} generators", images.len(), n_generators.len()),
        ));
    }
    let perms = images
        .iter()
        .map(|im| Permutation::from_one_based(im))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| FormatError::field(&field, e))?;
    if let Some(p) = perms.iter().find(|p| p.degree() != l) {
        return Err(FormatError::field(field, format!("permutation of degree {} but l = {l}", p.degree())));
    }
    spec.with_ibr_action(perms).map_err(|e| FormatError::field(field, e))
}

fn action_images(spec: &SubsectionSpec) -> Option<Vec<Vec<usize>>> {
    spec.ibr_action()?;
    Some(
        spec.generators()
            .iter()
            .map(|&g| spec.ibr_permutation(g).expect("generator in the group").to_one_based())
            .collect(),
    )
}

/// `Q` either as its coefficient stack `A_1, ..., A_φ(q)` or entrywise as
/// sparse maps from exponents (mod `q`) to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QMatrixRecord {
    Stack(Vec<Vec<Vec<i64>>>),
    Powers(Vec<Vec<BTreeMap<String, i64>>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GendecRecord {
    pub q: u64,
    pub p: u64,
    pub k: usize,
    pub l: usize,
    pub spec: SpecRecord,
    /// Cartan matrix of `b` or `b̄`; the verifiers use `C̄`.
    pub cartan: CartanRecord,
    pub q_matrix: QMatrixRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<u32>>,
}

/// A loaded gendec record.
#[derive(Clone, Debug, PartialEq)]
pub struct GendecInput {
    pub data: GenDecData,
    pub c_bar: CartanData,
    pub heights: Option<Vec<u32>>,
}

fn int_matrix(rows: &[Vec<i64>], k: usize, l: usize, field: &str) -> Result<IntMatrix, FormatError> {
    if rows.len() != k || rows.iter().any(|r| r.len() != l) {
        return Err(FormatError::field(field, format!("expected a {k} x {l} matrix")));
    }
    Ok(IntMatrix::from_fn(k, l, |r, c| Integer::from(rows[r][c])))
}

impl GendecRecord {
    /// Stores `data` in stack form.
    pub fn from_data(data: &GenDecData, c_bar: &CartanData, heights: Option<Vec<u32>>) -> Self {
        let spec = data.spec();
        let stack = data
            .stack()
            .iter()
            .map(|a| a.iter_rows().map(|r| r.iter().map(|x| i64::try_from(x).expect("entry fits")).collect()).collect())
            .collect();
        GendecRecord {
            q: data.q(),
            p: data.p(),
            k: data.k(),
            l: data.l(),
            spec: SpecRecord {
                n_generators: spec.generators().iter().map(|&g| g as i64).collect(),
                ibr_action: action_images(spec),
            },
            cartan: CartanRecord::from_cartan(NormalizationTag::BBar, c_bar),
            q_matrix: QMatrixRecord::Stack(stack),
            heights,
        }
    }

    pub fn load(&self) -> Result<GendecInput, FormatError> {
        let (p, q, k, l) = (self.p, self.q, self.k, self.l);
        let spec = build_spec(p, q, &self.spec.n_generators, self.spec.ibr_action.as_deref(), l, "spec.")?;
        let spec = if spec.has_ibr_action() { spec } else { spec.with_trivial_action(l) };
        let cartan = self.cartan.to_cartan(p, q, None)?;
        if cartan.l() != l {
            return Err(FormatError::field("cartan", format!("size {} but l = {l}", cartan.l())));
        }
        let c_bar = dominated_cartan(&cartan, self.cartan.normalization.into(), q)
            .map_err(|e| FormatError::field("cartan", e))?;
        let data = match &self.q_matrix {
            QMatrixRecord::Stack(stack) => {
                let phi = basis_len(q, p);
                if stack.len() != phi {
                    return Err(FormatError::field("q_matrix.stack", format!("{} matrices, expected {phi}", stack.len())));
                }
                let mats = stack
                    .iter()
                    .enumerate()
                    .map(|(i, a)| int_matrix(a, k, l, &format!("q_matrix.stack[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                GenDecData::from_stack(spec, mats)?
            }
            QMatrixRecord::Powers(rows) => {
                if rows.len() != k || rows.iter().any(|r| r.len() != l) {
                    return Err(FormatError::field("q_matrix.powers", format!("expected a {k} x {l} array")));
                }
                let mut out = Vec::with_capacity(k);
                for (r, row) in rows.iter().enumerate() {
                    let mut entries = Vec::with_capacity(l);
                    for (c, map) in row.iter().enumerate() {
                        let terms = map
                            .iter()
                            .map(|(e, &coef)| {
                                e.trim().parse::<i64>().map(|e| (e, Integer::from(coef))).map_err(|_| {
                                    FormatError::field(
                                        format!("q_matrix.powers[{r}][{c}]"),
                                        format!("exponent `{e}` is not an integer"),
                                    )
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        entries.push(CyclotomicInteger::from_powers(q, p, &terms)?);
                    }
                    out.push(entries);
                }
                fourier_split(&CycMatrix::from_rows(out)?, spec)?
            }
        };
        if let Some(h) = &self.heights {
            if h.len() != k {
                return Err(FormatError::field("heights", format!("{} heights for k = {k}", h.len())));
            }
        }
        Ok(GendecInput { data, c_bar, heights: self.heights.clone() })
    }
}

/// Everything `bounds compare` needs about one block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleRecord {
    #[serde(default)]
    pub label: String,
    pub p: u64,
    pub q: u64,
    #[serde(default)]
    pub n_generators: Vec<i64>,
    pub cartan: CartanRecord,
    /// Defect of `b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<u32>,
    /// Quadratic forms as `[i, j, q_ij]` triples, 1-based, `i <= j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<Vec<(usize, usize, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_kb: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ibr_action: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gendec: Option<GendecRecord>,
}

/// A validated bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedBundle {
    pub block: BlockData,
    pub gendec: Option<GendecInput>,
}

impl BundleRecord {
    pub fn load(&self) -> Result<LoadedBundle, FormatError> {
        let cartan = self.cartan.to_cartan(self.p, self.q, self.defect)?;
        let l = cartan.l();
        let spec = build_spec(self.p, self.q, &self.n_generators, self.ibr_action.as_deref(), l, "")?;
        let mut block = BlockData::new(self.label.clone(), cartan, self.cartan.normalization.into(), spec)?;
        block.forms = self
            .forms
            .iter()
            .enumerate()
            .map(|(i, t)| QuadraticForm::new(l, t.clone()).map_err(|e| FormatError::field(format!("forms[{i}]"), e)))
            .collect::<Result<_, _>>()?;
        block.ordering = self.ordering.clone();
        block.partition = self.partition.clone();
        block.known_kb = self.known_kb;
        let gendec = match &self.gendec {
            None => None,
            Some(g) => {
                if (g.p, g.q) != (self.p, self.q) {
                    return Err(FormatError::field("gendec", "p and q differ from the bundle"));
                }
                let input = g.load()?;
                if input.c_bar.matrix() != block.cartan_b_bar().matrix() {
                    return Err(FormatError::field("gendec.cartan", "differs from the bundle's Cartan matrix"));
                }
                Some(input)
            }
        };
        Ok(LoadedBundle { block, gendec })
    }
}

/// An entry of a Gram matrix: a JSON integer or a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramEntry {
    Int(i64),
    Text(String),
}

/// A rational Gram matrix, `{"entries": [[2, "1/2"], ["1/2", 1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramRecord {
    pub entries: Vec<Vec<GramEntry>>,
}

impl GramRecord {
    pub fn to_matrix(&self) -> Result<RationalMatrix, FormatError> {
        let n = self.entries.len();
        if n == 0 || self.entries.iter().any(|r| r.len() != self.entries[0].len()) {
            return Err(FormatError::field("entries", "rows must be nonempty and of equal length"));
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, e) in row.iter().enumerate() {
                out.push(match e {
                    GramEntry::Int(x) => Rational::from_integer((*x).into()),
                    GramEntry::Text(s) => {
                        parse_rational(s.trim()).map_err(|e| FormatError::field(format!("entries[{r}][{c}]"), e))?
                    }
                });
            }
            rows.push(out);
        }
        Ok(RationalMatrix::from_rows(rows)?)
    }
}

/// `{"dim": 3, "terms": [[1, 1, 1], [1, 2, -1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormRecord {
    pub dim: usize,
    pub terms: Vec<(usize, usize, i64)>,
}

impl FormRecord {
    pub fn to_form(&self) -> Result<QuadraticForm, FormatError> {
        QuadraticForm::new(self.dim, self.terms.clone()).map_err(|e| FormatError::field("terms", e))
    }
}
