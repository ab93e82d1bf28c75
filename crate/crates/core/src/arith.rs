//! Small integer helpers shared by the combinatorial modules.

use crate::error::{Error, Result};

/// Ceiling of `n / d` for a positive divisor, correct for negative `n`.
pub(crate) fn ceil_div(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    -((-n).div_euclid(d))
}

pub(crate) fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn is_prime(n: u64) -> bool {
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

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

pub(crate) fn checked_pow(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k)
        .ok_or_else(|| Error::OutOfRange(format!("{p}^{k} overflows")))
}

/// Exponent of the largest power of `p` dividing `k`; `k` must be nonzero.
pub(crate) fn valuation(p: u64, mut k: u64) -> u32 {
    debug_assert!(k != 0 && p > 1);
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}
