use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{gcd, is_prime, modulo, phi_prime_power, prime_power_exponent};
use crate::Integer;

use super::GendecError;

/// Validates a prime-power conductor `q = p^k` (`k >= 0`).
pub fn check_conductor(q: u64, p: u64) -> Result<(), GendecError> {
    if !is_prime(p) {
        return Err(GendecError::Domain(format!("{p} is not a prime")));
    }
    if prime_power_exponent(q, p).is_none() {
        return Err(GendecError::Domain(format!("conductor {q} is not a power of {p}")));
    }
    Ok(())
}

/// Number of basis elements `ζ^1, ..., ζ^φ(q)`; one (the element `1`) for `q = 1`.
pub fn basis_len(q: u64, p: u64) -> usize {
    if q == 1 {
        1
    } else {
        phi_prime_power(q, p) as usize
    }
}

/// An element `Σ_{i=1}^{φ(q)} a_i ζ^i` of `Z[ζ_q]`, `q` a power of `p`.
///
/// For `q = 1` the single coefficient is the integer itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    q: u64,
    p: u64,
    coeffs: Vec<Integer>,
}

impl CyclotomicInteger {
    /// Takes coefficients on the basis `ζ^1, ..., ζ^φ(q)` as they are.
    pub fn new(q: u64, p: u64, coeffs: Vec<Integer>) -> Result<Self, GendecError> {
        check_conductor(q, p)?;
        if coeffs.len() != basis_len(q, p) {
            return Err(GendecError::Domain(format!(
                "{} coefficients given, basis has {} elements",
                coeffs.len(),
                basis_len(q, p)
            )));
        }
        Ok(CyclotomicInteger { q, p, coeffs })
    }

    /// Rewrites `Σ_{e=0}^{q-1} raw[e] ζ^e` on the basis `ζ^1, ..., ζ^φ(q)`,
    /// using `Σ_{j=0}^{p-1} ζ^{r + jq/p} = 0`.
    pub fn cyc_reduce(q: u64, p: u64, raw: &[Integer]) -> Result<Self, GendecError> {
        check_conductor(q, p)?;
        if raw.len() as u64 != q {
            return Err(GendecError::Domain(format!("expected {q} raw coefficients, got {}", raw.len())));
        }
        Ok(Self::reduce_unchecked(q, p, raw))
    }

    fn reduce_unchecked(q: u64, p: u64, raw: &[Integer]) -> Self {
        if q == 1 {
            return CyclotomicInteger { q, p, coeffs: vec![raw[0].clone()] };
        }
        let phi = phi_prime_power(q, p) as usize;
        let step = (q / p) as usize;
        let mut out = vec![Integer::zero(); phi];
        for (e, a) in raw.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if e == 0 {
                for j in 1..p as usize {
                    out[j * step - 1] -= a;
                }
            } else if e <= phi {
                out[e - 1] += a;
            } else {
                let r = e - phi;
                for j in 0..p as usize - 1 {
                    out[r + j * step - 1] -= a;
                }
            }
        }
        CyclotomicInteger { q, p, coeffs: out }
    }

    /// `Σ c ζ^e` over the given `(e, c)` pairs, exponents taken mod `q`.
    pub fn from_powers(q: u64, p: u64, terms: &[(i64, Integer)]) -> Result<Self, GendecError> {
        check_conductor(q, p)?;
        let mut raw = vec![Integer::zero(); q as usize];
        for (e, c) in terms {
            raw[modulo(*e, q) as usize] += c;
        }
        Ok(Self::reduce_unchecked(q, p, &raw))
    }

    pub fn zero(q: u64, p: u64) -> Result<Self, GendecError> {
        Self::from_powers(q, p, &[])
    }

    pub fn from_integer(q: u64, p: u64, m: Integer) -> Result<Self, GendecError> {
        Self::from_powers(q, p, &[(0, m)])
    }

    pub fn zeta_power(q: u64, p: u64, e: i64) -> Result<Self, GendecError> {
        Self::from_powers(q, p, &[(e, 1.into())])
    }

    pub fn conductor(&self) -> u64 {
        self.q
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Coefficients on `ζ^1, ..., ζ^φ(q)`.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// The coefficient of `ζ^i`, `1 <= i <= φ(q)`.
    pub fn coefficient(&self, i: usize) -> &Integer {
        &self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn exponent(&self, index: usize) -> u64 {
        if self.q == 1 {
            0
        } else {
            index as u64 + 1
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.q == other.q && self.p == other.p,
            "mixing conductors {} and {}",
            self.q,
            other.q
        );
    }

    /// `ζ ↦ ζ^γ` for a unit `γ` mod `q`.
    pub fn galois_apply(&self, gamma: i64) -> Result<Self, GendecError> {
        let g = modulo(gamma, self.q);
        if self.q > 1 && gcd(g, self.q) != 1 {
            return Err(GendecError::Domain(format!("{gamma} is not a unit mod {}", self.q)));
        }
        let mut raw = vec![Integer::zero(); self.q as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = (self.exponent(i) as u128 * g as u128 % self.q as u128) as usize;
            raw[e] += a;
        }
        Ok(Self::reduce_unchecked(self.q, self.p, &raw))
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// `T_q(x) = Σ_γ γ(x)`, the trace down to `Q`.
    pub fn trace_tq(&self) -> Integer {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * trace_of_power(self.exponent(i) as i64, self.q, self.p))
            .sum()
    }

    /// The image under `ζ ↦ 1` in `Z/p`; zero exactly when `(1 - ζ)` divides `x`.
    pub fn residue_mod_p(&self) -> u64 {
        let s: Integer = self.coeffs.iter().sum();
        s.mod_floor(&Integer::from(self.p)).to_u64().expect("residue fits")
    }
}

/// `T_q(ζ^e)`: `φ(q)` if `q | e`, `-q/p` if only `q/p | e`, otherwise `0`.
pub fn trace_of_power(e: i64, q: u64, p: u64) -> Integer {
    let e = modulo(e, q);
    if e == 0 {
        Integer::from(basis_len(q, p))
    } else if e % (q / p) == 0 {
        -Integer::from(q / p)
    } else {
        Integer::zero()
    }
}

/// The representative `0 <= i' < q/p` of `-i` mod `q/p`, for `1 <= i <= φ(q)`.
pub fn iprime(i: u64, q: u64, p: u64) -> Result<u64, GendecError> {
    check_conductor(q, p)?;
    if q == 1 {
        return Err(GendecError::Domain("i' needs q >= p".into()));
    }
    let phi = phi_prime_power(q, p);
    if i < 1 || i > phi {
        return Err(GendecError::Domain(format!("index {i} outside 1..={phi}")));
    }
    let m = q / p;
    let ip = (m - i % m) % m;
    debug_assert!(m <= i + ip && i + ip <= phi);
    Ok(ip)
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, other: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInteger { q: self.q, p: self.p, coeffs }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, other: &CyclotomicInteger) -> CyclotomicInteger {
        self + &-other
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger { q: self.q, p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, other: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_same(other);
        let q = self.q as usize;
        let mut raw = vec![Integer::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(self.exponent(i) + other.exponent(j)) as usize % q] += a * b;
                }
            }
        }
        CyclotomicInteger::reduce_unchecked(self.q, self.p, &raw)
    }
}

impl Mul<&Integer> for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, m: &Integer) -> CyclotomicInteger {
        CyclotomicInteger { q: self.q, p: self.p, coeffs: self.coeffs.iter().map(|a| a * m).collect() }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            match (first, a.is_negative()) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            let mag = a.abs();
            let e = self.exponent(i);
            match (e, mag == Integer::from(1)) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})_{}", self.q)
    }
}
