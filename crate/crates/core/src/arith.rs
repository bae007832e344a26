//! Arithmetic functions on factored integers.
//!
//! For `n = p₁p₂⋯p_Ω` with `p₁ ≥ p₂ ≥ ⋯ ≥ p_Ω`, the Schinzel–Szekeres value is
//! `S(n) = max_k p₁⋯p_{k-1}·p_k²` (and `S(1) = 1`). It equals `n` times the
//! largest ratio between consecutive divisors of `n`.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use crate::primes::factorize;
use crate::real::{exact, floor_u128, floor_u64, Real};
use crate::{DivisorRatio, Result};

/// An integer with its prime factorization and the derived quantities
/// `P(n)`, `P⁻(n)` and `S(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<u64>,
    s: u128,
}

impl FactoredInteger {
    pub(crate) fn from_descending(n: u64, factors: Vec<u64>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0] >= w[1]));
        debug_assert_eq!(factors.iter().product::<u64>(), n);
        let mut s = 1u128;
        let mut prefix = 1u128;
        for &p in &factors {
            s = s.max(prefix * p as u128 * p as u128);
            prefix *= p as u128;
        }
        FactoredInteger { n, factors, s }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime factors with multiplicity, largest first.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// `P(n)`, with `P(1) = 1`.
    pub fn largest(&self) -> u64 {
        self.factors.first().copied().unwrap_or(1)
    }

    /// `P⁻(n)`; `None` stands for `P⁻(1) = +∞`.
    pub fn least(&self) -> Option<u64> {
        self.factors.last().copied()
    }

    /// Schinzel–Szekeres value `S(n)`.
    pub fn s(&self) -> u128 {
        self.s
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] != w[1])
    }

    /// `S(n)/n`, the largest ratio of consecutive divisors.
    pub fn max_divisor_ratio(&self) -> DivisorRatio {
        Ratio::new(self.s, self.n as u128)
    }
}

/// `S(n)` for `n ≥ 1`.
pub fn schinzel_szekeres(n: u64) -> Result<u128> {
    Ok(factorize(n)?.s())
}

/// Largest ratio `d_{i+1}/d_i` of consecutive divisors, computed as
/// `S(n)/n`. Equal to 1 for `n = 1`.
pub fn max_divisor_ratio(n: u64) -> Result<DivisorRatio> {
    Ok(factorize(n)?.max_divisor_ratio())
}

/// Largest ratio of consecutive divisors, read off the sorted divisor list
/// obtained by trial division. Independent of the factorization code.
pub fn max_divisor_ratio_by_divisors(n: u64) -> Result<DivisorRatio> {
    if n == 0 {
        return Err(crate::Error::invalid("n", "a positive integer", 0));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    let mut best = Ratio::from_integer(1u128);
    for w in small.windows(2) {
        let r = Ratio::new(w[1] as u128, w[0] as u128);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// `S(n) ≤ t·n` on exact integers, with `t = num/den`.
pub(crate) fn s_at_most_scaled(s: u128, n: u64, t: &BigRational) -> bool {
    let lhs = BigInt::from(s) * t.denom();
    let rhs = t.numer() * BigInt::from(n);
    lhs <= rhs
}

/// Whether every ratio of consecutive divisors of `n` is at most `t`.
pub fn is_t_dense(n: u64, t: impl Real) -> Result<bool> {
    let t = exact("t", &t)?;
    let f = factorize(n)?;
    Ok(s_at_most_scaled(f.s(), n, &t))
}

/// Integer thresholds of the set `𝒜(x, y, z, t)`:
/// `n ≤ x`, `P(n) ≤ y`, `P⁻(n) > z` and `S(n) ≤ x·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetBounds {
    /// `⌊x⌋`
    pub x: u64,
    /// `⌊y⌋`
    pub y: u64,
    /// `⌊z⌋`
    pub z: u64,
    /// `⌊x·t⌋`
    pub xt: u128,
}

impl SetBounds {
    /// Floors of the exact parameters; `None` when one of them is not finite.
    pub fn from_reals(x: impl Real, y: impl Real, z: impl Real, t: impl Real) -> Option<Self> {
        let x = x.to_exact()?;
        let y = y.to_exact()?;
        let z = z.to_exact()?;
        let t = t.to_exact()?;
        Some(SetBounds {
            x: floor_u64(&x),
            y: floor_u64(&y),
            z: floor_u64(&z),
            xt: floor_u128(&(x * t)),
        })
    }

    pub(crate) fn from_exact(
        x: &BigRational,
        y: &BigRational,
        z: &BigRational,
        t: &BigRational,
    ) -> Self {
        SetBounds {
            x: floor_u64(x),
            y: floor_u64(y),
            z: floor_u64(z),
            xt: floor_u128(&(x * t)),
        }
    }

    /// Membership from precomputed `P(n)`, `P⁻(n)` (`None` for `+∞`) and `S(n)`.
    pub fn admits(&self, n: u64, largest: u64, least: Option<u64>, s: u128) -> bool {
        n >= 1
            && n <= self.x
            && largest <= self.y
            && least.map_or(true, |q| q > self.z)
            && s <= self.xt
    }

    pub fn contains(&self, f: &FactoredInteger) -> bool {
        self.admits(f.n(), f.largest(), f.least(), f.s())
    }
}

/// Membership in `𝒜(x, y, z, t)`: `n ≤ x`, `P(n) ≤ y`, `P⁻(n) > z` and
/// `S(n) ≤ x·t`. False whenever a parameter is not finite.
///
/// # Panics
///
/// If `n ≤ x` but `n` cannot be factored (see [`factorize`]).
pub fn in_a(n: u64, x: impl Real, y: impl Real, z: impl Real, t: impl Real) -> bool {
    let Some(b) = SetBounds::from_reals(x, y, z, t) else {
        return false;
    };
    if n == 0 || n > b.x {
        return false;
    }
    let f = factorize(n).expect("n is within the factorization range");
    b.contains(&f)
}

/// Membership in `𝒜*(x, y)`: `n > √x`, `P(n) ≤ min(y, √x/27)`, `S(n) ≤ x`.
/// False whenever a parameter is not finite.
///
/// # Panics
///
/// If `n ≤ x` but `n` cannot be factored (see [`factorize`]).
pub fn in_a_star(n: u64, x: impl Real, y: impl Real) -> bool {
    let (Some(x), Some(y)) = (x.to_exact(), y.to_exact()) else {
        return false;
    };
    in_a_star_floor(n, floor_u64(&x), floor_u64(&y))
}

pub(crate) fn in_a_star_floor(n: u64, x: u64, y: u64) -> bool {
    if n == 0 || n > x {
        return false;
    }
    let f = factorize(n).expect("n is within the factorization range");
    a_star_admits(&f, x, y)
}

pub(crate) fn a_star_admits(f: &FactoredInteger, x: u64, y: u64) -> bool {
    let n = f.n() as u128;
    let p = f.largest() as u128;
    n * n > x as u128 && p <= y as u128 && 729 * p * p <= x as u128 && f.s() <= x as u128
}
