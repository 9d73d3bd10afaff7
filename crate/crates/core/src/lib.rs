//! Exact upper bounds on the number of irreducible characters `k(B)` and of
//! height-zero characters `k0(B)` of a p-block, computed from local data: a
//! Cartan matrix, the order `q` of a subsection element and the action of the
//! fusion quotient.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmat`] generic dense matrices with fraction-free elimination,
//!   Smith normal form and positive-definiteness tests,
//! * [`lattice`] exact minima of positive definite quadratic forms over the
//!   integers (LLL preconditioning plus Fincke–Pohst enumeration),
//! * [`weights`] weight matrices `W` with `x W x^t >= 1` on nonzero integer
//!   vectors and the constructions used to build them,
//! * [`bounds`] every bound formula plus a comparison report,
//! * [`gendec`] cyclotomic integers and the identities satisfied by
//!   generalized decomposition matrices,
//! * [`io`] the JSON record formats and the built-in fixtures.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod exactmat;
pub mod gendec;
pub mod io;
pub mod lattice;
pub mod scalar;
pub mod weights;

pub use error::{Error, Result};
pub use exactmat::{CartanData, Matrix, MatrixError};
pub use scalar::{Field, Scalar};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Dense matrix of exact rationals; the carrier for every exact computation.
pub type RationalMatrix = Matrix<Rational>;
/// Dense matrix of arbitrary-precision integers.
pub type IntMatrix = Matrix<Integer>;
/// Dense `f64` matrix; only used internally for lattice-reduction heuristics.
pub type FloatMatrix = Matrix<f64>;
