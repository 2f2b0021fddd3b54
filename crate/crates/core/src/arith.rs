//! Small integer number theory used across the crate.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

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

/// Divisors of `n` in ascending order. Empty for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization of a machine integer by trial division.
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// If `d` is a prime power `q^k` with `k >= 1`, returns `q`.
pub fn prime_power_base(d: u64) -> Option<u64> {
    let f = factor_u64(d);
    if f.len() == 1 {
        f.keys().next().copied()
    } else {
        None
    }
}

/// Möbius function.
pub fn moebius(n: u64) -> i8 {
    let f = factor_u64(n);
    if f.values().any(|&e| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Largest divisor of `n` coprime to the characteristic exponent `p`.
///
/// `p == 1` imposes no condition and returns `n` unchanged.
pub fn prime_to_p_part(n: u64, p: u64) -> u64 {
    assert!(n >= 1, "prime_to_p_part: n must be positive");
    if p <= 1 {
        return n;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m
}

/// `p`-part of `n`, the complement of [`prime_to_p_part`].
pub fn p_part(n: u64, p: u64) -> u64 {
    n / prime_to_p_part(n, p)
}

/// Exponent of the prime `q` in the nonzero integer `n`.
pub fn valuation(n: &BigUint, q: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let q = BigUint::from(q);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = m.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        m = quot;
        v += 1;
    }
}

/// Factorization of a positive integer into prime powers.
///
/// Trial division; the component-group orders that reach this are small.
pub fn q_primary_decomposition(n: &BigUint) -> BTreeMap<u64, u32> {
    assert!(!n.is_zero(), "q_primary_decomposition: n must be positive");
    if let Some(small) = n.to_u64() {
        return factor_u64(small);
    }
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    let mut d = 2u64;
    loop {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        loop {
            let (quot, rem) = m.div_rem(&bd);
            if !rem.is_zero() {
                break;
            }
            m = quot;
            *out.entry(d).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let last = m
            .to_u64()
            .expect("cofactor exceeds u64 after trial division");
        *out.entry(last).or_insert(0) += 1;
    }
    out
}
