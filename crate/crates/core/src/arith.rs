//! Small-integer number theory used for conductors, unit groups and primes.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(k)` when `n = p^k` (with `k = 0` for `n = 1`).
pub fn prime_power_exponent(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// The prime `p` with `n = p^k`, `k >= 1`.
pub fn prime_of_prime_power(n: u64) -> Option<u64> {
    let p = (2..=n).find(|d| n % d == 0)?;
    prime_power_exponent(n, p).map(|_| p)
}

/// Euler's totient of a prime power `q = p^k`.
pub fn phi_prime_power(q: u64, p: u64) -> u64 {
    if q == 1 {
        1
    } else {
        q - q / p
    }
}

/// Splits `n` into `(p-part, p'-part)`.
pub fn split_part(n: u64, p: u64) -> (u64, u64) {
    let mut pp = 1;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        pp *= p;
    }
    (pp, rest)
}

pub fn pow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer overflow in power")
}

/// `x mod m` in `[0, m)` for signed `x`.
pub fn modulo(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_exponent(27, 3), Some(3));
        assert_eq!(prime_power_exponent(1, 5), Some(0));
        assert_eq!(prime_power_exponent(12, 2), None);
        assert_eq!(prime_of_prime_power(16), Some(2));
        assert_eq!(prime_of_prime_power(12), None);
        assert_eq!(phi_prime_power(9, 3), 6);
        assert_eq!(split_part(6, 3), (3, 2));
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
