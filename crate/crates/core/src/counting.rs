//! Exact counts and enumerations of friable integers, of the sets
//! `𝒜(x, y, z, t)` and of integers with `t`-dense divisors.
//!
//! Counts stream over `[1, x]` with a segmented sieve that computes `P(n)`,
//! `P⁻(n)`, `S(n)` and squarefreeness for every `n` of a segment; nothing is
//! materialized. Enumerations of `𝒜(x, y, z, t)` are generated recursively
//! by largest prime factor, and checked against a plain filter over a
//! [`FactorTable`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::SetBounds;
use crate::primes::primes_up_to;
use crate::real::{display, exact, exact_at_least, exact_positive, floor_u64, isqrt, Real};
use crate::{Error, Rational, Result};

/// Largest `x` for which sets are materialized.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Largest `x` for streamed counts. Keeps `S(n) ≤ n·P(n)` below `2⁶⁴`.
pub const STREAM_LIMIT: u64 = 1_000_000_000;

/// Reference value of `c₂`, the constant in `D(x, 2) ~ c₂·x/log x`.
pub const C2: f64 = 1.2248;

/// Reference value of `c₂'`, the squarefree analogue of [`C2`].
pub const C2_SQUAREFREE: f64 = 0.0686;

const SEGMENT: u64 = 1 << 16;

fn check_limit(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        return Err(Error::LimitExceeded { what, value, limit });
    }
    Ok(())
}

/// Arithmetic data of the integers `lo..lo + len`.
struct Segment {
    lo: u64,
    largest: Vec<u64>,
    /// `u64::MAX` for `n = 1`.
    least: Vec<u64>,
    s: Vec<u64>,
    squarefree: Vec<bool>,
}

impl Segment {
    /// Sieves `[lo, hi]` (`lo ≥ 1`) with `primes ⊇ {p ≤ √hi}`.
    ///
    /// Each `n` meets its prime factors in ascending order `q₁ ≤ q₂ ≤ ⋯`;
    /// the term of `S(n)` attached to `q_i` is `q_i·n/(q₁⋯q_{i-1})`, i.e. `q_i`
    /// times the cofactor left before dividing by `q_i`.
    fn sieve(lo: u64, hi: u64, primes: &[u64]) -> Segment {
        let len = (hi - lo + 1) as usize;
        let mut rem: Vec<u64> = (lo..=hi).collect();
        let mut largest = vec![1u64; len];
        let mut least = vec![u64::MAX; len];
        let mut s = vec![1u64; len];
        let mut squarefree = vec![true; len];
        for &p in primes {
            if p * p > hi {
                break;
            }
            let first = lo.div_ceil(p) * p;
            let mut m = first;
            while m <= hi {
                let i = (m - lo) as usize;
                let mut e = 0;
                while rem[i] % p == 0 {
                    s[i] = s[i].max(p * rem[i]);
                    rem[i] /= p;
                    e += 1;
                }
                if least[i] == u64::MAX {
                    least[i] = p;
                }
                largest[i] = p;
                if e > 1 {
                    squarefree[i] = false;
                }
                m += p;
            }
        }
        for i in 0..len {
            let r = rem[i];
            if r > 1 {
                s[i] = s[i].max(r * r);
                largest[i] = r;
                if least[i] == u64::MAX {
                    least[i] = r;
                }
            }
        }
        Segment {
            lo,
            largest,
            least,
            s,
            squarefree,
        }
    }

    fn len(&self) -> usize {
        self.s.len()
    }
}

/// Runs `map` over the segments of `[1, limit]` in parallel.
fn map_segments<R: Send>(limit: u64, map: impl Fn(&Segment) -> R + Sync) -> Vec<R> {
    if limit == 0 {
        return Vec::new();
    }
    let primes = primes_up_to(isqrt(limit as u128) as u64);
    let starts: Vec<u64> = (0..limit.div_ceil(SEGMENT))
        .map(|k| 1 + k * SEGMENT)
        .collect();
    starts
        .into_par_iter()
        .map(|lo| {
            let hi = (lo + SEGMENT - 1).min(limit);
            map(&Segment::sieve(lo, hi, &primes))
        })
        .collect()
}

/// `S(n) ≤ t·n` for a fixed rational `t`.
#[derive(Clone)]
struct Density {
    num: BigInt,
    den: BigInt,
    small: Option<(u128, u128)>,
}

impl Density {
    fn new(t: &BigRational) -> Self {
        let small = t.numer().to_u128().zip(t.denom().to_u128());
        Density {
            num: t.numer().clone(),
            den: t.denom().clone(),
            small,
        }
    }

    fn admits(&self, s: u64, n: u64) -> bool {
        if let Some((num, den)) = self.small {
            if let (Some(l), Some(r)) = ((s as u128).checked_mul(den), num.checked_mul(n as u128)) {
                return l <= r;
            }
        }
        BigInt::from(s) * &self.den <= &self.num * BigInt::from(n)
    }
}

/// The five counting functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CountKind {
    /// `Ψ(x, y)`: `n ≤ x` with `P(n) ≤ y`.
    Psi,
    /// `A(x, y, z, t)`.
    A,
    /// Squarefree part of `A(x, y, z, t)`.
    APrime,
    /// `D(x, t)`: `n ≤ x` with `t`-dense divisors.
    D,
    /// Squarefree part of `D(x, t)`.
    DPrime,
}

impl CountKind {
    pub fn name(self) -> &'static str {
        match self {
            CountKind::Psi => "PSI",
            CountKind::A => "A",
            CountKind::APrime => "A_PRIME",
            CountKind::D => "D",
            CountKind::DPrime => "D_PRIME",
        }
    }

    fn squarefree(self) -> bool {
        matches!(self, CountKind::APrime | CountKind::DPrime)
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['-', '\''], "_").as_str() {
            "PSI" => Ok(CountKind::Psi),
            "A" => Ok(CountKind::A),
            "A_PRIME" | "A_" => Ok(CountKind::APrime),
            "D" => Ok(CountKind::D),
            "D_PRIME" | "D_" => Ok(CountKind::DPrime),
            _ => Err(Error::invalid(
                "kind",
                "one of PSI, A, A_PRIME, D, D_PRIME",
                s,
            )),
        }
    }
}

/// Parameters of a count. Defaults: `y = x`, `z = 1`, `t = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountQuery {
    pub kind: CountKind,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
    pub t: Rational,
}

impl CountQuery {
    pub fn new(kind: CountKind, x: impl Real) -> Result<Self> {
        let x = exact_positive("x", &x)?;
        let one = Rational::one();
        Ok(CountQuery {
            kind,
            y: x.clone(),
            x,
            z: one.clone(),
            t: one,
        })
    }

    pub fn with_y(mut self, y: impl Real) -> Result<Self> {
        self.y = exact_at_least("y", &y, 1, "at least 1")?;
        Ok(self)
    }

    pub fn with_z(mut self, z: impl Real) -> Result<Self> {
        self.z = exact_at_least("z", &z, 1, "at least 1")?;
        Ok(self)
    }

    pub fn with_t(mut self, t: impl Real) -> Result<Self> {
        self.t = exact_at_least("t", &t, 1, "at least 1")?;
        Ok(self)
    }

    pub fn bounds(&self) -> SetBounds {
        SetBounds::from_exact(&self.x, &self.y, &self.z, &self.t)
    }

    pub const CSV_HEADER: &'static str = "kind,x,y,z,t,count";

    pub fn csv_row(&self, count: u64) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.kind,
            display(&self.x),
            display(&self.y),
            display(&self.z),
            display(&self.t),
            count
        )
    }
}

/// Exact count for a query, streamed over `[1, ⌊x⌋]`.
pub fn count_query(q: &CountQuery) -> Result<u64> {
    let b = q.bounds();
    check_limit("x", b.x, STREAM_LIMIT)?;
    let squarefree = q.kind.squarefree();
    let counts = match q.kind {
        CountKind::Psi => {
            let y = b.y;
            map_segments(b.x, |seg| {
                (0..seg.len()).filter(|&i| seg.largest[i] <= y).count() as u64
            })
        }
        CountKind::A | CountKind::APrime => map_segments(b.x, |seg| {
            (0..seg.len())
                .filter(|&i| {
                    let least = Some(seg.least[i]).filter(|&q| q != u64::MAX);
                    seg.lo + i as u64 <= b.x
                        && b.admits(seg.lo + i as u64, seg.largest[i], least, seg.s[i] as u128)
                        && (!squarefree || seg.squarefree[i])
                })
                .count() as u64
        }),
        CountKind::D | CountKind::DPrime => {
            let density = Density::new(&q.t);
            map_segments(b.x, |seg| {
                (0..seg.len())
                    .filter(|&i| {
                        density.admits(seg.s[i], seg.lo + i as u64)
                            && (!squarefree || seg.squarefree[i])
                    })
                    .count() as u64
            })
        }
    };
    Ok(counts.into_iter().sum())
}

/// `Ψ(x, y)`.
pub fn count_psi(x: impl Real, y: impl Real) -> Result<u64> {
    let x = exact("x", &x)?;
    let y = exact("y", &y)?;
    let n = floor_u64(&x);
    if n == 0 {
        return Ok(0);
    }
    let q = CountQuery::new(CountKind::Psi, x)?.with_y(y.max(Rational::one()))?;
    count_query(&q)
}

/// `A(x, y, z, t)`, or its squarefree part `A'(x, y, z, t)`.
pub fn count_a(
    x: impl Real,
    y: impl Real,
    z: impl Real,
    t: impl Real,
    squarefree: bool,
) -> Result<u64> {
    let kind = if squarefree {
        CountKind::APrime
    } else {
        CountKind::A
    };
    let q = CountQuery::new(kind, x)?.with_y(y)?.with_z(z)?.with_t(t)?;
    count_query(&q)
}

fn count_dense(x: impl Real, t: impl Real, kind: CountKind) -> Result<u64> {
    let x = exact("x", &x)?;
    if floor_u64(&x) == 0 {
        exact_at_least("t", &t, 1, "at least 1")?;
        return Ok(0);
    }
    let q = CountQuery::new(kind, x)?.with_t(t)?;
    count_query(&q)
}

/// `D(x, t)`: integers `n ≤ x` whose consecutive divisors have ratios `≤ t`.
pub fn count_d(x: impl Real, t: impl Real) -> Result<u64> {
    count_dense(x, t, CountKind::D)
}

/// `D'(x, t)`: the squarefree integers counted by [`count_d`].
pub fn count_d_prime(x: impl Real, t: impl Real) -> Result<u64> {
    count_dense(x, t, CountKind::DPrime)
}

/// `𝒮(x, y)` in ascending order, generated as products of primes `≤ y`.
pub fn enumerate_smooth(x: impl Real, y: impl Real) -> Result<Vec<u64>> {
    let n = floor_u64(&exact("x", &x)?);
    let y = floor_u64(&exact("y", &y)?);
    check_limit("x", n, ENUMERATION_LIMIT)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let primes = primes_up_to(y.min(n));
    let mut out = Vec::new();
    fn walk(m: u64, n: u64, from: usize, primes: &[u64], out: &mut Vec<u64>) {
        out.push(m);
        for (i, &p) in primes.iter().enumerate().skip(from) {
            if m * p > n {
                break;
            }
            walk(m * p, n, i, primes, out);
        }
    }
    walk(1, n, 0, &primes, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn a_bounds(x: impl Real, y: impl Real, z: impl Real, t: impl Real) -> Result<SetBounds> {
    let x = exact_positive("x", &x)?;
    let y = exact("y", &y)?;
    let z = exact("z", &z)?;
    let t = exact("t", &t)?;
    let b = SetBounds::from_exact(&x, &y, &z, &t);
    check_limit("x", b.x, ENUMERATION_LIMIT)?;
    Ok(b)
}

/// `𝒜(x, y, z, t)` in ascending order, generated by the decomposition
/// `𝒜(x, y, z, t) = {1 if x ≥ 1} ∪ ⋃_{z < p ≤ min(y, √(xt))} p·𝒜(x/p, p, z, t)`.
pub fn enumerate_a(x: impl Real, y: impl Real, z: impl Real, t: impl Real) -> Result<Vec<u64>> {
    let b = a_bounds(x, y, z, t)?;
    let cap = b.y.min(b.x).min(isqrt(b.xt).min(u64::MAX as u128) as u64);
    let primes = primes_up_to(cap);
    let mut out = Vec::new();
    generate_a(b.x, b.y, b.z, b.xt, 1, &primes, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn generate_a(n: u64, y: u64, z: u64, xt: u128, m: u64, primes: &[u64], out: &mut Vec<u64>) {
    if n == 0 {
        return;
    }
    out.push(m);
    for &p in primes {
        if p > y || p > n || (p as u128) * (p as u128) > xt {
            break;
        }
        if p > z {
            generate_a(n / p, p, z, xt / p as u128, m * p, primes, out);
        }
    }
}

/// `𝒜(x, y, z, t)` in ascending order, by testing every `n ≤ x`.
pub fn enumerate_a_filtered(
    x: impl Real,
    y: impl Real,
    z: impl Real,
    t: impl Real,
) -> Result<Vec<u64>> {
    let b = a_bounds(x, y, z, t)?;
    Ok(FactorTable::new(b.x.max(1))?.enumerate_a(&b))
}

/// `P(n)`, `P⁻(n)`, `S(n)` and squarefreeness of every `n ≤ limit`.
#[derive(Debug, Clone)]
pub struct FactorTable {
    limit: u64,
    largest: Vec<u32>,
    least: Vec<u32>,
    s: Vec<u64>,
    squarefree: Vec<bool>,
}

impl FactorTable {
    pub fn new(limit: u64) -> Result<Self> {
        check_limit("table limit", limit, ENUMERATION_LIMIT)?;
        let len = limit as usize + 1;
        let mut t = FactorTable {
            limit,
            largest: vec![0; len],
            least: vec![0; len],
            s: vec![0; len],
            squarefree: vec![false; len],
        };
        for seg in map_segments(limit, |seg| {
            (
                seg.lo,
                seg.largest.clone(),
                seg.least.clone(),
                seg.s.clone(),
                seg.squarefree.clone(),
            )
        }) {
            let (lo, largest, least, s, sq) = seg;
            for i in 0..s.len() {
                let n = lo as usize + i;
                t.largest[n] = largest[i] as u32;
                t.least[n] = if least[i] == u64::MAX {
                    0
                } else {
                    least[i] as u32
                };
                t.s[n] = s[i];
                t.squarefree[n] = sq[i];
            }
        }
        Ok(t)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `P(n)` for `1 ≤ n ≤ limit`.
    pub fn largest(&self, n: u64) -> u64 {
        self.largest[n as usize] as u64
    }

    /// `P⁻(n)`, `None` for `n = 1`.
    pub fn least(&self, n: u64) -> Option<u64> {
        Some(self.least[n as usize] as u64).filter(|&q| q != 0)
    }

    pub fn s(&self, n: u64) -> u128 {
        self.s[n as usize] as u128
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.squarefree[n as usize]
    }

    /// Membership of `n ≤ limit` in the set with bounds `b`.
    pub fn admits(&self, n: u64, b: &SetBounds) -> bool {
        b.admits(n, self.largest(n), self.least(n), self.s(n))
    }

    fn scan_limit(&self, b: &SetBounds) -> u64 {
        assert!(
            b.x <= self.limit,
            "table covers [1, {}], query needs {}",
            self.limit,
            b.x
        );
        b.x
    }

    /// Number of `n` in the set, by direct filtering.
    pub fn count_a(&self, b: &SetBounds, squarefree: bool) -> u64 {
        (1..=self.scan_limit(b))
            .filter(|&n| self.admits(n, b) && (!squarefree || self.is_squarefree(n)))
            .count() as u64
    }

    pub fn enumerate_a(&self, b: &SetBounds) -> Vec<u64> {
        (1..=self.scan_limit(b))
            .filter(|&n| self.admits(n, b))
            .collect()
    }

    /// Both sides of the decomposition by largest prime factor, each term
    /// counted by filtering.
    pub fn buchstab(&self, b: &SetBounds) -> BuchstabReport {
        let lhs = self.count_a(b, false);
        let indicator = u64::from(b.x >= 1);
        let mut terms = Vec::new();
        // Primes above x contribute empty sets.
        for p in 2..=b.y.min(b.x) {
            if (p as u128) * (p as u128) > b.xt {
                break;
            }
            if p <= b.z || self.largest(p) != p {
                continue;
            }
            let sub = SetBounds {
                x: b.x / p,
                y: p,
                z: b.z,
                xt: b.xt / p as u128,
            };
            terms.push((p, self.count_a(&sub, false)));
        }
        let rhs = indicator + terms.iter().map(|&(_, c)| c).sum::<u64>();
        BuchstabReport {
            lhs,
            rhs,
            indicator,
            terms,
        }
    }

    /// The three inclusions of [`inclusion_checks`], for `x ≤ limit`.
    pub fn inclusions(&self, x: impl Real, y: impl Real) -> Result<InclusionReport> {
        let x = exact_at_least("x", &x, 2, "at least 2")?;
        let y = exact_at_least("y", &y, 2, "at least 2")?;
        let n = floor_u64(&x);
        check_limit("x", n, self.limit)?;
        let two = Rational::from_integer(2.into());
        let half = floor_u64(&(&x / &two));
        let whole = SetBounds {
            x: n,
            y: n,
            z: 1,
            xt: n as u128,
        };
        let half_y = SetBounds {
            x: half,
            y: floor_u64(&y),
            z: 1,
            xt: half as u128,
        };
        let smooth_x = floor_u64(&(&x / (&two * &y)));
        let dense = |m: u64| self.s(m) <= 2 * m as u128;

        let mut report = InclusionReport::default();
        for m in 1..=half {
            if !dense(m) {
                continue;
            }
            report.dense.record(m, self.admits(m, &whole));
            if self.is_squarefree(m) {
                report
                    .dense_squarefree
                    .record(m, self.admits(m, &whole) && self.is_squarefree(m));
            }
        }
        for m in 1..=smooth_x {
            if self.largest(m) <= half_y.y {
                report.smooth.record(m, self.admits(m, &half_y));
            }
        }
        Ok(report)
    }
}

/// Both sides of the decomposition of `A(x, y, z, t)` by largest prime factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuchstabReport {
    /// `A(x, y, z, t)` by direct count.
    pub lhs: u64,
    /// `1_{x ≥ 1} + Σ A(x/p, p, z, t)`.
    pub rhs: u64,
    pub indicator: u64,
    /// `(p, A(x/p, p, z, t))` for every prime of the sum.
    pub terms: Vec<(u64, u64)>,
}

impl BuchstabReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks `A(x, y, z, t) = 1_{x ≥ 1} + Σ_{z < p ≤ min(y, √(xt))} A(x/p, p, z, t)`.
pub fn buchstab_check(
    x: impl Real,
    y: impl Real,
    z: impl Real,
    t: impl Real,
) -> Result<BuchstabReport> {
    let x = exact_positive("x", &x)?;
    let y = exact_at_least("y", &y, 2, "at least 2")?;
    let z = exact_at_least("z", &z, 1, "at least 1")?;
    let t = exact_at_least("t", &t, 1, "at least 1")?;
    let b = SetBounds::from_exact(&x, &y, &z, &t);
    check_limit("x", b.x, ENUMERATION_LIMIT)?;
    Ok(FactorTable::new(b.x.max(1))?.buchstab(&b))
}

/// One inclusion between finite sets, checked element by element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Inclusion {
    /// Size of the subset.
    pub checked: u64,
    /// Smallest element of the subset missing from the superset.
    pub first_violation: Option<u64>,
}

impl Inclusion {
    fn record(&mut self, n: u64, inside: bool) {
        self.checked += 1;
        if !inside && self.first_violation.is_none() {
            self.first_violation = Some(n);
        }
    }

    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// The inclusions `{n ≤ x/2 : 2-dense} ⊆ 𝒜(x)`, its squarefree analogue
/// `⊆ 𝒜'(x)`, and `𝒮(x/2y, y) ⊆ 𝒜(x/2, y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub dense: Inclusion,
    pub dense_squarefree: Inclusion,
    pub smooth: Inclusion,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.dense.holds() && self.dense_squarefree.holds() && self.smooth.holds()
    }
}

pub fn inclusion_checks(x: impl Real, y: impl Real) -> Result<InclusionReport> {
    let xr = exact_at_least("x", &x, 2, "at least 2")?;
    FactorTable::new(floor_u64(&xr))?.inclusions(xr, y)
}

/// One row of a [`RatioSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioRow<F> {
    pub x: F,
    pub count: u64,
}

impl<F: Float> RatioRow<F> {
    /// `count·log x / x`, natural logarithm.
    pub fn ratio(&self) -> F {
        F::from(self.count).expect("count fits the float type") * self.x.ln() / self.x
    }
}

/// Counts of `D(x, t)` or `D'(x, t)` along ascending `x`, with the
/// normalised ratio `count·log x / x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSeries<F> {
    pub t: F,
    pub squarefree: bool,
    pub target: Option<F>,
    pub rows: Vec<RatioRow<F>>,
}

impl<F: Float + fmt::Display> RatioSeries<F> {
    pub const CSV_HEADER: &'static str = "x,count,ratio,target";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let target = self.target.map(|t| format!("{t:.6}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:.6},{}\n",
                format_float(row.x),
                row.count,
                row.ratio(),
                target
            ));
        }
        out
    }
}

fn format_float<F: Float + fmt::Display>(x: F) -> String {
    if x.fract().is_zero() && x.abs() < F::from(1e15).unwrap() {
        format!("{x:.0}")
    } else {
        format!("{x}")
    }
}

/// `D(x, t)` (or `D'(x, t)`) for every `x` of an ascending list, in a single
/// sweep up to the largest `x`. The target is the reference constant when
/// `t = 2`.
pub fn estimate_ct<F>(t: F, xs: &[F], squarefree: bool) -> Result<RatioSeries<F>>
where
    F: Float + Real + Send + Sync,
{
    let t_exact = exact_at_least("t", &t, 1, "at least 1")?;
    let mut floors = Vec::with_capacity(xs.len());
    for x in xs {
        let xr = exact_at_least("x", x, 2, "at least 2")?;
        floors.push(floor_u64(&xr));
    }
    if xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("xs", "ascending", format!("{xs:?}")));
    }
    let top = floors.last().copied().unwrap_or(0);
    check_limit("x", top, STREAM_LIMIT)?;
    let density = Density::new(&t_exact);
    let buckets = map_segments(top, |seg| {
        let mut local = vec![0u64; floors.len()];
        for i in 0..seg.len() {
            let n = seg.lo + i as u64;
            if density.admits(seg.s[i], n) && (!squarefree || seg.squarefree[i]) {
                local[floors.partition_point(|&f| f < n)] += 1;
            }
        }
        local
    });
    let mut counts = vec![0u64; floors.len()];
    for local in buckets {
        for (c, l) in counts.iter_mut().zip(local) {
            *c += l;
        }
    }
    let mut acc = 0;
    let rows = xs
        .iter()
        .zip(counts)
        .map(|(&x, c)| {
            acc += c;
            RatioRow { x, count: acc }
        })
        .collect();
    let target = if t_exact == Rational::from_integer(2.into()) {
        F::from(if squarefree { C2_SQUAREFREE } else { C2 })
    } else {
        None
    };
    Ok(RatioSeries {
        t,
        squarefree,
        target,
        rows,
    })
}
