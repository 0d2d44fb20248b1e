//! Small integer number theory: primality, factoring, primitive prime divisors.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, a)` with `q = p^a`, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = prime_factors(q as u128);
    if f.len() != 1 {
        return None;
    }
    let p = f[0] as u64;
    let mut a = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        a += 1;
    }
    Some((p, a))
}

pub fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Multiplicative order of `q` modulo the prime `r` (requires r ∤ q).
pub fn order_mod(q: u128, r: u128) -> u128 {
    let n = r - 1;
    let mut ord = n;
    for f in prime_factors(n) {
        while ord.is_multiple_of(f) && pow_mod(q, ord / f, r) == 1 {
            ord /= f;
        }
    }
    ord
}

/// Largest value of q^m - 1 we are willing to factor by trial division.
pub const ZSIGMONDY_LIMIT: u128 = 1 << 62;

/// Least prime `r > 2` dividing `q^m - 1` but no `q^j - 1` with `j < m`.
pub fn zsigmondy_prime(q: u64, m: u32) -> Result<u64> {
    if prime_power(q).is_none() {
        return Err(Error::Invalid(alloc::format!("{q} is not a prime power")));
    }
    if m < 2 {
        return Err(Error::Invalid("m must be at least 2".into()));
    }
    let mut n: u128 = 1;
    for _ in 0..m {
        n = n.checked_mul(q as u128).filter(|&v| v <= ZSIGMONDY_LIMIT).ok_or_else(|| {
            Error::TooLarge(alloc::format!("{q}^{m}"))
        })?;
    }
    for r in prime_factors(n - 1) {
        if r == 2 {
            continue;
        }
        if order_mod(q as u128, r) == m as u128 {
            return Ok(r as u64);
        }
    }
    Err(Error::NoZsigmondy { q, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: r | q^m - 1 and r ∤ q^j - 1 for j < m, via plain powers
    fn brute(q: u64, m: u32) -> Option<u64> {
        let n = (q as u128).pow(m) - 1;
        (3..=n as u64).find(|&r| {
            is_prime(r)
                && n.is_multiple_of(r as u128)
                && (1..m).all(|j| ((q as u128).pow(j) - 1) % r as u128 != 0)
        })
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_prime(2, 4), Ok(5));
        assert_eq!(zsigmondy_prime(3, 4), Ok(5));
        assert_eq!(zsigmondy_prime(2, 6), Err(Error::NoZsigmondy { q: 2, m: 6 }));
    }

    #[test]
    fn zsigmondy_matches_brute_force() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 2..=6u32 {
                if (q as u128).pow(m) > 200_000 {
                    continue;
                }
                let got = zsigmondy_prime(q, m).ok();
                assert_eq!(got, brute(q, m), "q={q} m={m}");
                if let Some(r) = got {
                    assert_eq!(order_mod(q as u128, r as u128), m as u128);
                }
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
        assert!(is_prime(1_000_003));
    }
}
