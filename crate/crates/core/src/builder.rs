//! Recursive construction of a long chain `C(x, y)` inside `𝒮(x, y)`.
//!
//! For `2^r ≤ x < 2^{r+1}` the chain is `1-2` when `r = 1` and `4-1-2` when
//! `r = 2`. For `r ≥ 3`, with `j = π(min(y, x/2))`, `k = π(min(y, √(x/2)))`
//! and `C*(x)` the descending powers of two in `[2, x]`, put
//!
//! ```text
//! D = 2·C*(x/2) - p₂·C(x/p₂, p₂) - ⋯ - p_{k-1}·C(x/p_{k-1}, p_{k-1})
//! E = p_k·C(x/p_k, p_k)        (empty when k = 1)
//! ```
//!
//! and assemble the reversed chain as `2-E-1-D` when `j = k`, `2-1-D-E` when
//! `j = k+1` and `2-D-E-1-2p_{j-1}` when `j ≥ k+2`. Every `p·C(x/p, p)`
//! starts at `2p·p_{ℓ-1}` and ends at `2p`, so consecutive pieces are
//! related. The chain starts at `2p_{j-1}` (`p₀ = 2`, `p₋₁ = 1/2`), ends at
//! `2`, and contains `𝒜(x/2, y)`.

use serde::Serialize;

use crate::chain::{Chain, Context};
use crate::primes::{primes_up_to, PrimeTable};
use crate::real::{exact_at_least, floor_u64, Real};
use crate::{Error, Result};

/// `j = π(min(y, x/2))` and `k = π(min(y, √(x/2)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BuilderIndices {
    pub j: usize,
    pub k: usize,
}

fn index_pair(primes: &[u64], x: u64, y: u64) -> BuilderIndices {
    // p ≤ x/2 ⇔ 2p ≤ ⌊x⌋ and p ≤ √(x/2) ⇔ 2p² ≤ ⌊x⌋.
    let j = primes.partition_point(|&p| p <= y && 2 * p <= x);
    let k = primes.partition_point(|&p| p <= y && 2 * (p as u128) * (p as u128) <= x as u128);
    BuilderIndices { j, k }
}

fn floors(x: &impl Real, y: &impl Real) -> Result<(u64, u64)> {
    let x = exact_at_least("x", x, 2, "at least 2")?;
    let y = exact_at_least("y", y, 2, "at least 2")?;
    Ok((floor_u64(&x), floor_u64(&y)))
}

pub fn indices(x: impl Real, y: impl Real) -> Result<BuilderIndices> {
    let (x, y) = floors(&x, &y)?;
    let table = PrimeTable::new((x / 2).max(2))?;
    Ok(index_pair(table.primes(), x, y))
}

/// Powers of two in `[2, x]`, largest first.
pub fn power_chain(x: impl Real) -> Result<Chain> {
    let x = floor_u64(&exact_at_least("x", &x, 4, "at least 4")?);
    Ok(powers_of_two(x, 2))
}

/// Powers of two in `[low, x]`, largest first.
fn powers_of_two(x: u64, low: u64) -> Chain {
    let mut entries = Vec::new();
    let mut p = 1u64 << (63 - x.leading_zeros());
    while p >= low {
        entries.push(p);
        p /= 2;
    }
    Chain::from_trusted(entries)
}

/// The chain `C(x, y)`, valid in `𝒮(x, y)`.
pub fn build_chain(x: impl Real, y: impl Real) -> Result<Chain> {
    let (x, y) = floors(&x, &y)?;
    if x > crate::counting::ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded {
            what: "x",
            value: x,
            limit: crate::counting::ENUMERATION_LIMIT,
        });
    }
    let primes = primes_up_to((x / 2).max(2));
    let chain = Builder { primes: &primes }.build(x, y)?;
    Ok(chain.in_context(Context::new(x, y))?)
}

struct Builder<'a> {
    primes: &'a [u64],
}

impl Builder<'_> {
    fn build(&self, x: u64, y: u64) -> Result<Chain> {
        let chain = match x {
            0 | 1 => return Err(Error::invalid("x", "at least 2", x)),
            2..=3 => Chain::from_trusted(vec![1, 2]),
            4..=7 => Chain::from_trusted(vec![4, 1, 2]),
            _ => self.assemble(x, y)?,
        };
        let BuilderIndices { j, .. } = index_pair(self.primes, x, y);
        let expected_first = match j {
            0 => 1,
            1 => 4,
            j => 2 * self.primes[j - 2],
        };
        if chain.first() != Some(expected_first) || chain.last() != Some(2) {
            return Err(Error::Construction(format!(
                "C({x},{y}) runs from {:?} to {:?}, expected {expected_first} to 2",
                chain.first(),
                chain.last()
            )));
        }
        if chain.entries().iter().filter(|&&v| v == 1).count() != 1 {
            return Err(Error::Construction(format!(
                "C({x},{y}) must contain 1 exactly once"
            )));
        }
        Ok(chain)
    }

    /// `p·C(x/p, p)`.
    fn piece(&self, x: u64, p: u64) -> Result<Chain> {
        Ok(self.build(x / p, p)?.scale(p)?)
    }

    /// `D` and `E` for `x ≥ 8`.
    fn pieces(&self, x: u64, k: usize) -> Result<(Chain, Chain)> {
        let mut d = powers_of_two(x, 4);
        for &p in &self.primes[1..k.saturating_sub(1).max(1)] {
            d = d.glue(&self.piece(x, p)?)?;
        }
        let e = if k >= 2 {
            self.piece(x, self.primes[k - 1])?
        } else {
            Chain::empty()
        };
        Ok((d, e))
    }

    fn assemble(&self, x: u64, y: u64) -> Result<Chain> {
        let BuilderIndices { j, k } = index_pair(self.primes, x, y);
        if k == 0 || j < k {
            return Err(Error::Construction(format!(
                "indices j={j}, k={k} at x={x}"
            )));
        }
        let (d, e) = self.pieces(x, k)?;
        let d_e = d.glue(&e)?;
        let one = Chain::from_trusted(vec![1]);
        let two = Chain::from_trusted(vec![2]);
        let inverse = if j == k {
            two.glue(&e)?.glue(&one)?.glue(&d)?
        } else if j == k + 1 {
            two.glue(&one)?.glue(&d_e)?
        } else {
            let tail = Chain::from_trusted(vec![2 * self.primes[j - 2]]);
            two.glue(&d_e)?.glue(&one)?.glue(&tail)?
        };
        Ok(inverse.inverse())
    }
}

/// A certified lower bound for the longest chain in `𝒮(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub bound: usize,
    pub certificate: Chain,
}

/// `f(x, y) ≥ |C(x, y)|`, with the chain itself as certificate; the
/// singleton `1` when `1 ≤ x < 2`.
pub fn lower_bound_f(x: impl Real, y: impl Real) -> Result<LowerBound> {
    let xr = exact_at_least("x", &x, 1, "at least 1")?;
    let yr = exact_at_least("y", &y, 2, "at least 2")?;
    let certificate = if floor_u64(&xr) < 2 {
        Chain::with_context(vec![1], Context::new(1, floor_u64(&yr)))?
    } else {
        build_chain(xr, yr)?
    };
    Ok(LowerBound {
        bound: certificate.len(),
        certificate,
    })
}

/// The top-level pieces `D` and `E` of `C(x, y)` for `x ≥ 8`.
pub fn assembly_pieces(x: impl Real, y: impl Real) -> Result<(Chain, Chain)> {
    let (x, y) = floors(&x, &y)?;
    if x < 8 {
        return Err(Error::invalid("x", "at least 8", x));
    }
    let primes = primes_up_to(x / 2);
    let BuilderIndices { k, .. } = index_pair(&primes, x, y);
    Builder { primes: &primes }.pieces(x, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::enumerate_a;

    #[test]
    fn index_examples() {
        assert_eq!(indices(100, 100).unwrap(), BuilderIndices { j: 15, k: 4 });
        assert_eq!(indices(18, 3).unwrap(), BuilderIndices { j: 2, k: 2 });
        assert_eq!(indices(2, 2).unwrap(), BuilderIndices { j: 0, k: 0 });
        assert!(indices(1, 2).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(power_chain(10).unwrap().entries(), &[8, 4, 2]);
        assert_eq!(power_chain(4).unwrap().entries(), &[4, 2]);
        assert_eq!(power_chain(1u64 << 20).unwrap().len(), 20);
        assert!(power_chain(3).is_err());
    }

    #[test]
    fn base_cases() {
        assert_eq!(build_chain(2, 2).unwrap().entries(), &[1, 2]);
        assert_eq!(build_chain(3, 5).unwrap().entries(), &[1, 2]);
        assert_eq!(build_chain(5, 7).unwrap().entries(), &[4, 1, 2]);
        assert!(build_chain(1.5, 2).is_err());
    }

    #[test]
    fn hundred() {
        let c = build_chain(100, 100).unwrap();
        assert_eq!(c.first(), Some(86));
        assert_eq!(c.last(), Some(2));
        assert!(c.verify().is_ok());
        let a = enumerate_a(50, 100, 1, 1).unwrap();
        assert!(a.iter().all(|&n| c.contains(n)));
        assert!(c.len() >= a.len());
    }

    #[test]
    fn assembly_pieces_are_chains() {
        for x in 8..400u64 {
            for y in [2, 3, 5, 7, x] {
                let (d, e) = assembly_pieces(x, y).unwrap();
                assert!(d.verify().is_ok() && e.verify().is_ok());
                assert!(d.glue(&e).unwrap().verify().is_ok());
            }
        }
    }

    #[test]
    fn small_bounds() {
        let lb = lower_bound_f(1, 2).unwrap();
        assert_eq!(lb.bound, 1);
        assert_eq!(lb.certificate.entries(), &[1]);
        let lb = lower_bound_f(4, 4).unwrap();
        assert!(lb.bound >= crate::counting::count_a(2, 4, 1, 1, false).unwrap() as usize);
        assert!(lb.certificate.verify().is_ok());
    }
}
