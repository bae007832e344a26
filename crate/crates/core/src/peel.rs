//! Chains inside `𝒜*(x, y)` that trade the large prime factors of an
//! integer for powers of a small prime `q`.
//!
//! Write `A = p₁⋯p_k·q^α` with `p₁ ≥ ⋯ ≥ p_k > q`. Each step multiplies the
//! current entry by the unique power of `q` that lands it in `(x/q², x/q]`,
//! then divides by the smallest remaining `p`. After `k` steps only a power
//! of `q` is left.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::arith::{a_star_admits, FactoredInteger};
use crate::chain::{Chain, ChainError, Context};
use crate::primes::factorize;
use crate::real::{floor_u128, floor_u64, Real};

/// Smallest `x` accepted by [`peel_chain`] and [`connect_astar`]: `3^10`.
pub const MIN_X: u64 = 59_049;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("x must be a finite number at least 3^10 = {MIN_X}, got {0}")]
    XTooSmall(String),
    #[error("y must be a finite number at least 3, got {0}")]
    YTooSmall(String),
    #[error("q must be 2 or 3, got {0}")]
    InvalidQ(u64),
    #[error("{0} is not in A*(x, y)")]
    NotInAStar(u64),
    #[error("the largest prime factor {largest} of {n} must exceed q = {q}")]
    LargestNotAboveQ { n: u64, largest: u64, q: u64 },
    #[error("the smallest prime factor {least} of {n} is below q = {q}")]
    SmallestBelowQ { n: u64, least: u64, q: u64 },
    #[error("P({a}) = {pa} must be smaller than P({b}) = {pb}")]
    PrimeOrder { a: u64, pa: u64, b: u64, pb: u64 },
    #[error("no power of {q} places {n} in (x/q², x/q]")]
    NoPower { n: u64, q: u64 },
    #[error("the two halves of the connection share the interior entry {0}")]
    Collision(u64),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

struct Params {
    x: BigRational,
    fx: u64,
    fy: u64,
}

impl Params {
    fn new(x: &impl Real, y: &impl Real) -> Result<Self, PeelError> {
        let xr = x
            .to_exact()
            .ok_or_else(|| PeelError::XTooSmall(format!("{x:?}")))?;
        let fx = floor_u64(&xr);
        if fx < MIN_X {
            return Err(PeelError::XTooSmall(crate::real::display(&xr)));
        }
        let yr = y
            .to_exact()
            .ok_or_else(|| PeelError::YTooSmall(format!("{y:?}")))?;
        let fy = floor_u64(&yr);
        if fy < 3 {
            return Err(PeelError::YTooSmall(crate::real::display(&yr)));
        }
        Ok(Params { x: xr, fx, fy })
    }

    /// `⌊m·x⌋`.
    fn floor_times(&self, m: u64) -> u128 {
        floor_u128(&(&self.x * BigRational::from_integer(BigInt::from(m))))
    }

    fn star(&self, n: u64) -> Result<FactoredInteger, PeelError> {
        if n == 0 || n > self.fx {
            return Err(PeelError::NotInAStar(n));
        }
        let f = factorize(n).map_err(|_| PeelError::NotInAStar(n))?;
        if !a_star_admits(&f, self.fx, self.fy) {
            return Err(PeelError::NotInAStar(n));
        }
        Ok(f)
    }

    /// `n·q^ν` for the unique `ν ≥ 0` with `x/q² < n·q^ν ≤ x/q`.
    fn lift(&self, n: u64, q: u64) -> Result<u64, PeelError> {
        let (x, q128) = (self.fx as u128, q as u128);
        let fits: Vec<u128> = std::iter::successors(Some(n as u128), |m| Some(m * q128))
            .take_while(|&m| m * q128 <= x)
            .filter(|&m| m * q128 * q128 > x)
            .collect();
        match fits[..] {
            [m] => Ok(m as u64),
            _ => Err(PeelError::NoPower { n, q }),
        }
    }
}

/// The peeling chain `A = a₁ - ⋯ - a_s` from `A` to a power of `q`.
///
/// Every entry lies in `𝒜*(x, y)`, `P(a_j) = P(A)` for `j < s`, `P(a_s) = q`,
/// `P⁻(a_j) ≥ q`, and the last two entries satisfy `a_{s-1} > √(x·P(a_{s-1}))`,
/// `P(a_{s-1}/P(a_{s-1})) ≤ √(x/P(a_{s-1}))/27` and `a_s > 3√x`.
pub fn peel_chain(a: u64, q: u64, x: impl Real, y: impl Real) -> Result<Chain, PeelError> {
    let params = Params::new(&x, &y)?;
    if q != 2 && q != 3 {
        return Err(PeelError::InvalidQ(q));
    }
    let f = params.star(a)?;
    peel_factored(&params, &f, q)
}

fn peel_factored(params: &Params, f: &FactoredInteger, q: u64) -> Result<Chain, PeelError> {
    let a = f.n();
    if f.largest() <= q {
        return Err(PeelError::LargestNotAboveQ {
            n: a,
            largest: f.largest(),
            q,
        });
    }
    if let Some(least) = f.least().filter(|&l| l < q) {
        return Err(PeelError::SmallestBelowQ { n: a, least, q });
    }
    // Ascending order, so the smallest large prime is removed first.
    let large: Vec<u64> = f
        .factors()
        .iter()
        .rev()
        .copied()
        .filter(|&p| p != q)
        .collect();
    let mut entries = vec![a];
    let mut current = a;
    for &p in &large {
        let lifted = params.lift(current, q)?;
        if lifted != current {
            entries.push(lifted);
        }
        current = lifted / p;
        entries.push(current);
    }
    let chain = Chain::with_context(entries, Context::new(params.fx, params.fy))?;
    check_peel(params, &chain, f.largest(), q)?;
    Ok(chain)
}

fn check_peel(params: &Params, chain: &Chain, largest: u64, q: u64) -> Result<(), PeelError> {
    let fail = |msg: String| Err(PeelError::Postcondition(msg));
    let entries = chain.entries();
    let s = entries.len();
    if s < 2 {
        return fail(format!("chain {chain} is too short"));
    }
    let mut factored = Vec::with_capacity(s);
    for &n in entries {
        factored.push(
            params
                .star(n)
                .map_err(|_| PeelError::Postcondition(format!("{n} left A*(x, y)")))?,
        );
    }
    for (j, f) in factored.iter().enumerate() {
        let expected = if j + 1 < s { largest } else { q };
        if f.largest() != expected {
            return fail(format!(
                "P({}) = {}, expected {expected}",
                f.n(),
                f.largest()
            ));
        }
        if f.least().is_some_and(|l| l < q) {
            return fail(format!("{} has a prime factor below {q}", f.n()));
        }
    }
    let prev = &factored[s - 2];
    let (a, p) = (prev.n() as u128, prev.largest());
    if a * a <= params.floor_times(p) {
        return fail(format!("{a}² ≤ x·{p}"));
    }
    let cofactor = prev.factors().get(1).copied().unwrap_or(1) as u128;
    if 729 * cofactor * cofactor * p as u128 > params.fx as u128 {
        return fail(format!("729·{cofactor}²·{p} > x"));
    }
    let last = entries[s - 1] as u128;
    if last * last <= params.floor_times(9) {
        return fail(format!("{last} ≤ 3√x"));
    }
    Ok(())
}

/// A chain inside `𝒜*(x, y)` from `A` to `B`, obtained by peeling both ends
/// down to powers of two and joining the first peel to the inverse of the
/// second. Requires `P(A) < P(B)`.
pub fn connect_astar(a: u64, b: u64, x: impl Real, y: impl Real) -> Result<Chain, PeelError> {
    let params = Params::new(&x, &y)?;
    let fa = params.star(a)?;
    let fb = params.star(b)?;
    if fa.largest() >= fb.largest() {
        return Err(PeelError::PrimeOrder {
            a,
            pa: fa.largest(),
            b,
            pb: fb.largest(),
        });
    }
    let first = if fa.largest() == 2 {
        Chain::with_context(vec![a], Context::new(params.fx, params.fy))?
    } else {
        peel_factored(&params, &fa, 2)?
    };
    let second = peel_factored(&params, &fb, 2)?.inverse();
    match first.glue(&second) {
        Ok(chain) => Ok(chain),
        Err(ChainError::Overlap { value }) => Err(PeelError::Collision(value)),
        Err(e) => Err(e.into()),
    }
}
