use std::collections::BTreeMap;
use std::fmt;

use crate::{Integer, Rational};

/// Which count a bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    /// `k(B)`, all irreducible characters.
    K,
    /// `k0(B)`, characters of height zero.
    K0,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::K => "k(B)",
            Target::K0 => "k0(B)",
        })
    }
}

/// One evaluated bound.
///
/// `value` is exact. Strictness flags are reported but never used to
/// tighten `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub target: Target,
    pub value: Rational,
    /// A weaker companion value, e.g. `q tr(WC)` next to the main bound.
    pub alternate: Option<Rational>,
    pub flags: BTreeMap<String, bool>,
    pub inputs: BTreeMap<String, String>,
    /// The formula that was evaluated.
    pub formula: String,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, target: Target, value: Rational, formula: impl Into<String>) -> Self {
        BoundReport {
            name: name.into(),
            target,
            value,
            alternate: None,
            flags: BTreeMap::new(),
            inputs: BTreeMap::new(),
            formula: formula.into(),
        }
    }

    /// `floor(value)`; the count is an integer, so this is also a bound.
    pub fn integer_bound(&self) -> Integer {
        self.value.floor().to_integer()
    }

    pub fn with_alternate(mut self, v: Rational) -> Self {
        self.alternate = Some(v);
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.flags.insert(key.to_string(), v);
        self
    }

    pub fn input(mut self, key: &str, v: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), v.to_string());
        self
    }
}
