//! Chains in the divisor graph.
//!
//! Two positive integers are adjacent when the smaller one divides the larger
//! one. A chain is a simple path in that graph. This crate provides:
//!
//! * arithmetic primitives: prime tables, factorization, the
//!   Schinzel–Szekeres function `S(n)` and dense-divisor tests ([`arith`]);
//! * exact counts and enumerations of friable integers, of the sets
//!   `𝒜(x, y, z, t)` and of integers with `t`-dense divisors ([`counting`]);
//! * the [`Chain`] type and its gluing operations ([`chain`]);
//! * a recursive construction of long chains `C(x, y)` together with the
//!   peeling and connecting chains inside `𝒜*(x, y)` ([`builder`], [`peel`]);
//! * an exact longest-chain solver for small `x` ([`solver`]);
//! * arrangements of a partitioned set with no two neighbours in the same
//!   block ([`ordering`]).
//!
//! Real parameters (`x`, `y`, `z`, `t`) are accepted as any [`Real`]: floats,
//! integers or exact rationals. All comparisons are exact.

pub mod arith;
pub mod builder;
pub mod chain;
pub mod counting;
mod error;
pub mod ordering;
pub mod peel;
pub mod primes;
pub mod real;
pub mod solver;

pub use arith::{
    in_a, in_a_star, is_t_dense, max_divisor_ratio, max_divisor_ratio_by_divisors,
    schinzel_szekeres, FactoredInteger, SetBounds,
};
pub use builder::{build_chain, indices, lower_bound_f, power_chain, BuilderIndices, LowerBound};
pub use chain::{verify_chain, Chain, ChainError, ChainRecord, ChainReport, Context, Violation};
pub use counting::{
    buchstab_check, count_a, count_d, count_d_prime, count_psi, count_query, enumerate_a,
    enumerate_a_filtered, enumerate_smooth, estimate_ct, inclusion_checks, BuchstabReport,
    CountKind, CountQuery, FactorTable, InclusionReport, RatioRow, RatioSeries,
};
pub use error::Error;
pub use ordering::{arrange, feasible, OrderingError};
pub use peel::{connect_astar, peel_chain, PeelError};
pub use primes::{factorize, is_prime, PrimeTable};
pub use real::Real;
pub use solver::{
    longest_chain_exact, oracle_bruteforce, search, Method, SearchOptions, SearchResult, Status,
};

/// Exact rational numbers used for real parameters.
pub type Rational = num_rational::BigRational;

/// Exact ratios of consecutive divisors.
pub type DivisorRatio = num_rational::Ratio<u128>;

/// Ratio series with double precision ratios.
pub type RatioSeries64 = RatioSeries<f64>;

/// Ratio series with single precision ratios.
pub type RatioSeries32 = RatioSeries<f32>;

/// Result alias for the fallible operations of this crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
