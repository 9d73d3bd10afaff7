use num_bigint::BigInt;
use num_traits::One;

use crate::exactmat::{DefinitenessFailure, MatrixError};
use crate::{Rational, RationalMatrix};

use super::{form_minimum, GramForm, LatticeError, LatticeMinimum};

#[derive(Clone, Debug, PartialEq)]
pub enum CertificationFailure {
    NotPositiveDefinite(DefinitenessFailure<Rational>),
    /// A nonzero integer vector with `x W x^t < 1`.
    BelowOne { witness: Vec<BigInt>, value: Rational },
}

/// Outcome of [`certify_integral_positive_definite`].
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub integral_positive_definite: bool,
    /// The input was not symmetric and `(W + W^t) / 2` was certified instead.
    pub symmetrized: bool,
    pub minimum: Option<LatticeMinimum>,
    pub failure: Option<CertificationFailure>,
}

/// Decides whether `x W x^t >= 1` for every nonzero integer vector `x`.
///
/// Only the symmetric part of `W` matters to the quadratic form, so an
/// asymmetric input is replaced by `(W + W^t) / 2` and flagged.
pub fn certify_integral_positive_definite(w: &RationalMatrix) -> Result<Certificate, LatticeError> {
    if !w.is_square() {
        return Err(MatrixError::NotSquare(w.shape()).into());
    }
    let symmetrized = !w.is_symmetric();
    let sym = if symmetrized {
        w.add(&w.transpose())?.scale(&Rational::new(1.into(), 2.into()))
    } else {
        w.clone()
    };
    let gram = match GramForm::new(sym) {
        Ok(g) => g,
        Err(LatticeError::NotPositiveDefinite(f)) => {
            return Ok(Certificate {
                integral_positive_definite: false,
                symmetrized,
                minimum: None,
                failure: Some(CertificationFailure::NotPositiveDefinite(f)),
            })
        }
        Err(e) => return Err(e),
    };
    let min = form_minimum(&gram)?;
    let ok = min.value >= Rational::one();
    let failure =
        (!ok).then(|| CertificationFailure::BelowOne { witness: min.witness.clone(), value: min.value.clone() });
    Ok(Certificate { integral_positive_definite: ok, symmetrized, minimum: Some(min), failure })
}
