//! Scalar traits shared by the generic matrix code.
//!
//! Every matrix routine in [`crate::exactmat`] is written against [`Scalar`],
//! which any `num_traits::Num` type with negation satisfies. Routines that
//! need division to be exact (inverse, rank over a field) additionally require
//! [`Field`]. Integers are a `Scalar` but not a `Field`; fraction-free
//! elimination only ever divides them by a known exact divisor.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn is_negative_value(&self) -> bool;
}

impl<T> Scalar for T
where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + Signed,
{
    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
}

/// Marker for scalars where `a / b` is the field quotient.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl<I> Field for Ratio<I>
where
    I: Clone + Integer + Debug + Signed,
    Ratio<I>: Scalar,
{
}
