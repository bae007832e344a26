//! Prime sieves, primality and factorization.

use std::sync::OnceLock;

use num_rational::Ratio;

use crate::arith::FactoredInteger;
use crate::{Error, Result};

/// Every `n` up to this bound is factored by trial division with the cached
/// primes below 10⁶. Larger `n` succeed only when the cofactor left after
/// trial division is 1 or a prime.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

const TRIAL_LIMIT: usize = 1_000_000;

/// Smallest-prime-factor sieve below this bound is shared by all calls.
const SPF_LIMIT: usize = 1 << 20;

/// Primes `≤ limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit fits in memory");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if let Some(start) = i.checked_mul(i) {
            for m in (start..=limit).step_by(i) {
                composite[m] = true;
            }
        }
    }
    primes
}

/// Smallest prime factor of every `n ≤ limit` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        spf[i] = i as u32;
        for m in (i.saturating_mul(i)..=limit).step_by(i) {
            if spf[m] == 0 {
                spf[m] = i as u32;
            }
        }
    }
    spf
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT as u64))
}

fn spf_table() -> &'static [u32] {
    static SPF: OnceLock<Vec<u32>> = OnceLock::new();
    SPF.get_or_init(|| smallest_prime_factors(SPF_LIMIT))
}

/// The primes up to a limit, indexed from `p₁ = 2`.
///
/// Two sentinels extend the indexing below 1: `p₀ = 2` and `p₋₁ = 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::invalid("limit", "at least 2", limit));
        }
        Ok(PrimeTable {
            limit,
            primes: primes_up_to(limit),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `p_j`, with the sentinels `p₀ = 2` and `p₋₁ = 1/2`. `None` below `-1`
    /// or beyond the table.
    pub fn p(&self, j: i64) -> Option<Ratio<u64>> {
        match j {
            -1 => Some(Ratio::new(1, 2)),
            0 => Some(Ratio::from_integer(2)),
            j if j >= 1 => self
                .primes
                .get(j as usize - 1)
                .map(|&p| Ratio::from_integer(p)),
            _ => None,
        }
    }

    /// `2·p_j`, which is always an integer.
    pub fn double_p(&self, j: i64) -> Option<u64> {
        let p = self.p(j)?;
        Some((p * 2).to_integer())
    }

    /// Number of primes `≤ v`. Exact as long as `v ≤ limit`.
    pub fn pi(&self, v: u64) -> usize {
        self.primes.partition_point(|&p| p <= v)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n` in ascending order, with multiplicity.
fn ascending_factors(mut n: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    if n <= SPF_LIMIT as u64 {
        let spf = spf_table();
        while n > 1 {
            let p = spf[n as usize] as u64;
            out.push(p);
            n /= p;
        }
        return Ok(out);
    }
    let original = n;
    let mut settled = false;
    for &p in trial_primes() {
        if p * p > n {
            settled = true;
            break;
        }
        if n % p != 0 {
            continue;
        }
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        if n == 1 || is_prime(n) {
            settled = true;
            break;
        }
    }
    if !settled && n > 1 && !is_prime(n) {
        return Err(Error::LimitExceeded {
            what: "factorization input",
            value: original,
            limit: FACTOR_LIMIT,
        });
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

/// Full factorization of `n ≥ 1`.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::invalid("n", "a positive integer", 0));
    }
    let mut factors = ascending_factors(n)?;
    factors.reverse();
    Ok(FactoredInteger::from_descending(n, factors))
}
