use num_integer::Integer as _;
use num_traits::Zero;

use crate::bounds::SubsectionSpec;
use crate::{IntMatrix, Integer, Matrix};

use super::cyclotomic::{basis_len, iprime};
use super::{CyclotomicInteger, GendecError};

/// A matrix over `Z[ζ_q]`.
pub type CycMatrix = Matrix<CyclotomicInteger>;

/// A generalized decomposition matrix `Q = Σ_{i=1}^{φ(q)} A_i ζ^i`, stored
/// as its integer coefficient matrices `A_1, ..., A_φ(q)` (each `k x l`).
#[derive(Clone, Debug, PartialEq)]
pub struct GenDecData {
    spec: SubsectionSpec,
    stack: Vec<IntMatrix>,
}

impl GenDecData {
    pub fn from_stack(spec: SubsectionSpec, stack: Vec<IntMatrix>) -> Result<Self, GendecError> {
        let expected = basis_len(spec.q(), spec.p());
        if stack.len() != expected {
            return Err(GendecError::Domain(format!("{} coefficient matrices given, expected {expected}", stack.len())));
        }
        let shape = stack[0].shape();
        if let Some(bad) = stack.iter().position(|a| a.shape() != shape) {
            return Err(GendecError::Domain(format!(
                "A_{} has shape {:?}, A_1 has {shape:?}",
                bad + 1,
                stack[bad].shape()
            )));
        }
        if let Some(action) = spec.ibr_action() {
            if action.degree() != shape.1 {
                return Err(GendecError::Domain(format!(
                    "action of degree {} but l = {}",
                    action.degree(),
                    shape.1
                )));
            }
        }
        Ok(GenDecData { spec, stack })
    }

    pub fn spec(&self) -> &SubsectionSpec {
        &self.spec
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn p(&self) -> u64 {
        self.spec.p()
    }

    /// Number of rows (ordinary characters).
    pub fn k(&self) -> usize {
        self.stack[0].rows()
    }

    /// Number of columns (Brauer characters of `b`).
    pub fn l(&self) -> usize {
        self.stack[0].cols()
    }

    /// `A_i` for `1 <= i <= φ(q)`.
    pub fn a(&self, i: usize) -> &IntMatrix {
        &self.stack[i - 1]
    }

    pub fn stack(&self) -> &[IntMatrix] {
        &self.stack
    }

    /// `𝒜_q = (A_1 | ... | A_φ(q))`, of size `k x φ(q) l`.
    pub fn stacked(&self) -> IntMatrix {
        IntMatrix::hconcat(&self.stack).expect("shapes checked on construction")
    }

    /// Reassembles `Q = Σ A_i ζ^i`.
    pub fn q_matrix(&self) -> CycMatrix {
        let (q, p) = (self.q(), self.p());
        CycMatrix::from_fn(self.k(), self.l(), |r, c| {
            let coeffs = self.stack.iter().map(|a| a[(r, c)].clone()).collect();
            CyclotomicInteger::new(q, p, coeffs).expect("length matches basis")
        })
    }
}

/// Splits `Q` into `A_i = T_q(Q (ζ^{-i} - ζ^{i'})) / q`, then checks that
/// `Σ A_i ζ^i` gives back `Q`.
pub fn fourier_split(q_matrix: &CycMatrix, spec: SubsectionSpec) -> Result<GenDecData, GendecError> {
    let (q, p) = (spec.q(), spec.p());
    if let Some(e) = q_matrix.entries().iter().find(|e| e.conductor() != q || e.prime() != p) {
        return Err(GendecError::Domain(format!(
            "entry of conductor {} in a matrix for q = {q}",
            e.conductor()
        )));
    }
    let (k, l) = q_matrix.shape();
    let stack = if q == 1 {
        vec![q_matrix.map(|e| e.coefficient(1).clone())]
    } else {
        let qi = Integer::from(q);
        let mut stack = Vec::new();
        for i in 1..=basis_len(q, p) {
            let ip = iprime(i as u64, q, p)?;
            let kernel = &CyclotomicInteger::zeta_power(q, p, -(i as i64))?
                - &CyclotomicInteger::zeta_power(q, p, ip as i64)?;
            let mut a = IntMatrix::zeros(k, l);
            for r in 0..k {
                for c in 0..l {
                    let t = (&q_matrix[(r, c)] * &kernel).trace_tq();
                    let (quot, rem) = t.div_mod_floor(&qi);
                    if !rem.is_zero() {
                        return Err(GendecError::Inconsistent(format!(
                            "T_q at entry ({}, {}) for i = {i} is {t}, not divisible by q = {q}",
                            r + 1,
                            c + 1
                        )));
                    }
                    a[(r, c)] = quot;
                }
            }
            stack.push(a);
        }
        stack
    };
    let data = GenDecData::from_stack(spec, stack)?;
    if data.q_matrix() != *q_matrix {
        return Err(GendecError::Inconsistent("Σ A_i ζ^i does not reproduce Q".into()));
    }
    Ok(data)
}
