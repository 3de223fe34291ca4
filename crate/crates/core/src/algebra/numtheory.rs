//! Small-integer number theory: trial-division primality and factorization.

use num::{BigInt, Integer, One, Zero};

pub fn is_prime_u64(n: u64) -> bool {
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

/// Prime factorization `[(p, e), ...]` with ascending primes. `factorize(1)` is empty.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Odd primes in increasing order, starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

const TRIAL_BOUND: u64 = 1 << 20;

/// Factor a positive big integer as far as trial division below 2^20 allows.
///
/// A cofactor with no small prime factors is written as `s^k` with `k`
/// maximal and reported as the pair `(s, k)`. `s` is prime whenever it is
/// below 2^40; otherwise it is assumed squarefree.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n > &BigInt::zero(), "factor_bigint needs a positive input");
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND {
        if BigInt::from(d) * BigInt::from(d) > n {
            break;
        }
        if rem_small(&n, d) == 0 {
            let bd = BigInt::from(d);
            let mut e = 0;
            while rem_small(&n, d) == 0 {
                n /= &bd;
                e += 1;
            }
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let (base, k) = perfect_power(&n);
        out.push((base, k));
    }
    out
}

fn rem_small(n: &BigInt, d: u64) -> u64 {
    n.magnitude()
        .iter_u32_digits()
        .rev()
        .fold(0u64, |acc, w| ((acc << 32) | w as u64) % d)
}

/// Write `n > 1` as `s^k` with `k` as large as possible.
fn perfect_power(n: &BigInt) -> (BigInt, u32) {
    // every prime factor left is at least TRIAL_BOUND = 2^20
    let max_k = (n.bits() / 20) as u32;
    for k in (2..=max_k).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && &num::pow(r.clone(), k as usize) == n {
            let (s, j) = perfect_power(&r);
            return (s, j * k);
        }
    }
    (n.clone(), 1)
}
