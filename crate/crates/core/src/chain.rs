//! Chains: simple paths in the divisor graph.
//!
//! A chain is a sequence of distinct positive integers in which each pair of
//! neighbours is related by divisibility. Its length is the number of
//! entries. Chains are immutable; every operation returns a new chain.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::factorize;

/// The ambient set `𝒮(x, y)`: integers `n ≤ x` with `P(n) ≤ y`, stored as
/// the floors of `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    pub x: u64,
    pub y: u64,
}

impl Context {
    pub fn new(x: u64, y: u64) -> Self {
        Context { x, y }
    }
}

/// Whether `a` and `b` are adjacent in the divisor graph.
pub fn related(a: u64, b: u64) -> bool {
    a != b && a != 0 && b != 0 && (a % b == 0 || b % a == 0)
}

/// The first defect found when reading a sequence from left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Zero {
        index: usize,
    },
    Duplicate {
        index: usize,
        value: u64,
        first: usize,
    },
    NotAdjacent {
        index: usize,
        a: u64,
        b: u64,
    },
    OutOfRange {
        index: usize,
        value: u64,
        x: u64,
    },
    NotSmooth {
        index: usize,
        value: u64,
        largest_prime: u64,
        y: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Zero { index } => write!(f, "entry {index} is zero"),
            Violation::Duplicate {
                index,
                value,
                first,
            } => {
                write!(f, "entry {index} repeats {value} (first at {first})")
            }
            Violation::NotAdjacent { index, a, b } => {
                write!(
                    f,
                    "entries {index} and {} are not related: ({a},{b})",
                    index + 1
                )
            }
            Violation::OutOfRange { index, value, x } => {
                write!(f, "entry {index} = {value} exceeds x = {x}")
            }
            Violation::NotSmooth {
                index,
                value,
                largest_prime,
                y,
            } => {
                write!(
                    f,
                    "entry {index} = {value} has prime factor {largest_prime} > y = {y}"
                )
            }
        }
    }
}

/// Outcome of [`verify_chain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub length: usize,
    pub violation: Option<Violation>,
}

impl ChainReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "OK length {}", self.length),
            Some(v) => write!(f, "INVALID {v}"),
        }
    }
}

/// Checks adjacency, distinctness and, with a context, membership in
/// `𝒮(x, y)`. Reports the first defect in reading order.
pub fn verify_chain(entries: &[u64], context: Option<Context>) -> ChainReport {
    ChainReport {
        length: entries.len(),
        violation: first_violation(entries, context),
    }
}

fn first_violation(entries: &[u64], context: Option<Context>) -> Option<Violation> {
    let mut seen = std::collections::HashMap::with_capacity(entries.len());
    for (index, &value) in entries.iter().enumerate() {
        if value == 0 {
            return Some(Violation::Zero { index });
        }
        if let Some(&first) = seen.get(&value) {
            return Some(Violation::Duplicate {
                index,
                value,
                first,
            });
        }
        seen.insert(value, index);
        if let Some(ctx) = context {
            if value > ctx.x {
                return Some(Violation::OutOfRange {
                    index,
                    value,
                    x: ctx.x,
                });
            }
            let largest_prime = factorize(value).map(|f| f.largest()).unwrap_or(value);
            if largest_prime > ctx.y {
                return Some(Violation::NotSmooth {
                    index,
                    value,
                    largest_prime,
                    y: ctx.y,
                });
            }
        }
        if index > 0 && !related(entries[index - 1], value) {
            return Some(Violation::NotAdjacent {
                index: index - 1,
                a: entries[index - 1],
                b: value,
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("not a chain: {0}")]
    Invalid(Violation),
    #[error("cannot join: {a} and {b} are not related by divisibility")]
    Unrelated { a: u64, b: u64 },
    #[error("cannot join: {value} occurs in both chains")]
    Overlap { value: u64 },
    #[error("connector {connector} already occurs in a chain")]
    ConnectorReused { connector: u64 },
    #[error("multiplier must be positive")]
    ZeroMultiplier,
    #[error("scaling {value} by {m} overflows")]
    Overflow { value: u64, m: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A simple path in the divisor graph, optionally tagged with its ambient set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    entries: Vec<u64>,
    context: Option<Context>,
}

impl Chain {
    /// The empty chain, identity for [`Chain::glue`].
    pub fn empty() -> Self {
        Chain::default()
    }

    pub fn new(entries: Vec<u64>) -> Result<Self, ChainError> {
        match first_violation(&entries, None) {
            None => Ok(Chain {
                entries,
                context: None,
            }),
            Some(v) => Err(ChainError::Invalid(v)),
        }
    }

    pub fn with_context(entries: Vec<u64>, context: Context) -> Result<Self, ChainError> {
        match first_violation(&entries, Some(context)) {
            None => Ok(Chain {
                entries,
                context: Some(context),
            }),
            Some(v) => Err(ChainError::Invalid(v)),
        }
    }

    pub fn singleton(n: u64) -> Result<Self, ChainError> {
        Chain::new(vec![n])
    }

    /// Internal constructor for sequences already known to be chains.
    pub(crate) fn from_trusted(entries: Vec<u64>) -> Self {
        debug_assert_eq!(first_violation(&entries, None), None);
        Chain {
            entries,
            context: None,
        }
    }

    /// Attaches a context after checking every entry against it.
    pub fn in_context(self, context: Context) -> Result<Self, ChainError> {
        Chain::with_context(self.entries, context)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.entries
    }

    pub fn context(&self) -> Option<Context> {
        self.context
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<u64> {
        self.entries.first().copied()
    }

    pub fn last(&self) -> Option<u64> {
        self.entries.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.entries.contains(&n)
    }

    pub fn verify(&self) -> ChainReport {
        verify_chain(&self.entries, self.context)
    }

    /// The same entries in reverse order.
    pub fn inverse(&self) -> Chain {
        let mut entries = self.entries.clone();
        entries.reverse();
        Chain {
            entries,
            context: self.context,
        }
    }

    /// Every entry multiplied by `m`. The context is dropped.
    pub fn scale(&self, m: u64) -> Result<Chain, ChainError> {
        if m == 0 {
            return Err(ChainError::ZeroMultiplier);
        }
        let entries = self
            .entries
            .iter()
            .map(|&v| v.checked_mul(m).ok_or(ChainError::Overflow { value: v, m }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chain {
            entries,
            context: None,
        })
    }

    /// Concatenation when the last entry of `self` and the first entry of
    /// `other` are related, collage when they are equal. Either chain may be
    /// empty. The context is kept only when both agree.
    pub fn glue(&self, other: &Chain) -> Result<Chain, ChainError> {
        let context = if self.context == other.context {
            self.context
        } else {
            None
        };
        let (Some(a), Some(b)) = (self.last(), other.first()) else {
            let entries = if self.is_empty() {
                other.entries.clone()
            } else {
                self.entries.clone()
            };
            return Ok(Chain { entries, context });
        };
        let tail = if a == b {
            &other.entries[1..]
        } else if related(a, b) {
            &other.entries[..]
        } else {
            return Err(ChainError::Unrelated { a, b });
        };
        let own: HashSet<u64> = self.entries.iter().copied().collect();
        if let Some(&value) = tail.iter().find(|v| own.contains(v)) {
            return Err(ChainError::Overlap { value });
        }
        let mut entries = Vec::with_capacity(self.len() + tail.len());
        entries.extend_from_slice(&self.entries);
        entries.extend_from_slice(tail);
        Ok(Chain { entries, context })
    }

    /// `self`, then `connector`, then `other`.
    pub fn juxtapose(&self, connector: u64, other: &Chain) -> Result<Chain, ChainError> {
        if self.contains(connector) || other.contains(connector) {
            return Err(ChainError::ConnectorReused { connector });
        }
        let middle = Chain::singleton(connector)?;
        self.glue(&middle)?.glue(other)
    }

    /// One integer per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 4);
        for v in &self.entries {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Reads one integer per line and checks the result is a chain.
    pub fn from_text(text: &str) -> Result<Chain, ChainError> {
        Chain::new(parse_lines(text)?)
    }

    pub fn to_record(&self) -> Option<ChainRecord> {
        self.context.map(|c| ChainRecord {
            x: c.x,
            y: c.y,
            entries: self.entries.clone(),
        })
    }
}

/// Parses one decimal integer per line. Trailing blank lines are ignored.
pub fn parse_lines(text: &str) -> Result<Vec<u64>, ChainError> {
    let body = text.trim_end_matches(['\n', '\r']);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.lines()
        .enumerate()
        .map(|(i, line)| {
            line.trim_end_matches('\r')
                .parse::<u64>()
                .map_err(|e| ChainError::Parse {
                    line: i + 1,
                    message: format!("{e}: {line:?}"),
                })
        })
        .collect()
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Chain {
    type Err = ChainError;

    /// Parses the dashed form `2-6-3`.
    fn from_str(s: &str) -> Result<Self, ChainError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Chain::empty());
        }
        let entries = s
            .split('-')
            .map(|p| {
                p.trim().parse::<u64>().map_err(|e| ChainError::Parse {
                    line: 1,
                    message: format!("{e}: {p:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Chain::new(entries)
    }
}

/// Structured form of a chain with its ambient set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub x: u64,
    pub y: u64,
    pub entries: Vec<u64>,
}

impl ChainRecord {
    pub fn context(&self) -> Context {
        Context::new(self.x, self.y)
    }

    pub fn into_chain(self) -> Result<Chain, ChainError> {
        let ctx = self.context();
        Chain::with_context(self.entries, ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Chain {
        s.parse().unwrap()
    }

    #[test]
    fn verification() {
        let r = verify_chain(&[1, 2], Some(Context::new(2, 2)));
        assert!(r.is_ok());
        assert_eq!(r.length, 2);
        let r = verify_chain(&[6, 2, 3], None);
        assert_eq!(
            r.violation,
            Some(Violation::NotAdjacent {
                index: 1,
                a: 2,
                b: 3
            })
        );
        let r = verify_chain(&[2, 4, 2], None);
        assert_eq!(
            r.violation,
            Some(Violation::Duplicate {
                index: 2,
                value: 2,
                first: 0
            })
        );
        let r = verify_chain(&[5, 10], Some(Context::new(10, 3)));
        assert!(matches!(
            r.violation,
            Some(Violation::NotSmooth { value: 5, .. })
        ));
        let r = verify_chain(&[3, 12], Some(Context::new(10, 3)));
        assert!(matches!(
            r.violation,
            Some(Violation::OutOfRange { value: 12, .. })
        ));
        assert!(verify_chain(&[], None).is_ok());
        assert!(verify_chain(&[0], None).violation.is_some());
    }

    #[test]
    fn inverse_and_scale() {
        assert_eq!(c("2-6-3").inverse(), c("3-6-2"));
        assert_eq!(c("5").inverse(), c("5"));
        assert_eq!(c("14-42-21").inverse().inverse(), c("14-42-21"));
        assert_eq!(c("2-6-3").scale(7).unwrap(), c("14-42-21"));
        assert_eq!(c("2-6-3").scale(1).unwrap(), c("2-6-3"));
        assert_eq!(c("1-2").scale(3).unwrap(), c("3-6"));
        assert_eq!(c("1-2").scale(0), Err(ChainError::ZeroMultiplier));
        assert!(c("2-4").scale(u64::MAX).is_err());
    }

    #[test]
    fn gluing() {
        assert_eq!(c("2-6-3").glue(&c("12-24-8")).unwrap(), c("2-6-3-12-24-8"));
        assert_eq!(c("2-6-3").glue(&c("3-12-24")).unwrap(), c("2-6-3-12-24"));
        assert_eq!(
            c("2-6-3").glue(&c("5-40-20")),
            Err(ChainError::Unrelated { a: 3, b: 5 })
        );
        assert_eq!(
            c("2-6-3").glue(&c("3-6")),
            Err(ChainError::Overlap { value: 6 })
        );
        assert_eq!(Chain::empty().glue(&c("2-6-3")).unwrap(), c("2-6-3"));
        assert_eq!(c("2-6-3").glue(&Chain::empty()).unwrap(), c("2-6-3"));
    }

    #[test]
    fn juxtaposition() {
        assert_eq!(
            c("2-6-3").juxtapose(15, &c("5-40-20")).unwrap(),
            c("2-6-3-15-5-40-20")
        );
        assert!(c("1-2").juxtapose(4, &c("1-3")).is_err());
        assert_eq!(c("2-4").juxtapose(12, &c("3-9")).unwrap(), c("2-4-12-3-9"));
        assert_eq!(
            c("2-4").juxtapose(4, &c("8")),
            Err(ChainError::ConnectorReused { connector: 4 })
        );
        assert!(c("2-4").juxtapose(10, &c("5")).is_err());
    }

    #[test]
    fn text_format() {
        let ch = c("62-31-93-1");
        assert_eq!(ch.to_text(), "62\n31\n93\n1\n");
        assert_eq!(Chain::from_text(&ch.to_text()).unwrap(), ch);
        assert_eq!(Chain::from_text("").unwrap(), Chain::empty());
        assert!(matches!(
            Chain::from_text("1\nx\n"),
            Err(ChainError::Parse { line: 2, .. })
        ));
        assert!(Chain::from_text("2\n3\n").is_err());
    }

    #[test]
    fn record_format() {
        let ch = Chain::with_context(vec![4, 1, 2], Context::new(5, 7)).unwrap();
        let rec = ch.to_record().unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"x":5,"y":7,"entries":[4,1,2]}"#);
        let back: ChainRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_chain().unwrap(), ch);
    }

    /// Random chains: a walk that moves to a random unused multiple or divisor.
    fn chain_strategy() -> impl Strategy<Value = Vec<u64>> {
        (1u64..60, proptest::collection::vec(0usize..1000, 0..12)).prop_map(|(start, picks)| {
            let mut out = vec![start];
            for pick in picks {
                let cur = *out.last().unwrap();
                let options: Vec<u64> = (1..=600u64)
                    .filter(|&v| related(cur, v) && !out.contains(&v))
                    .collect();
                if options.is_empty() {
                    break;
                }
                out.push(options[pick % options.len()]);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn generated_chains_are_valid(entries in chain_strategy()) {
            prop_assert!(verify_chain(&entries, None).is_ok());
        }

        #[test]
        fn inverse_preserves_validity(entries in chain_strategy()) {
            let ch = Chain::new(entries).unwrap();
            let inv = ch.inverse();
            prop_assert!(inv.verify().is_ok());
            prop_assert_eq!(inv.len(), ch.len());
            prop_assert_eq!(inv.inverse(), ch);
        }

        #[test]
        fn scale_preserves_validity(entries in chain_strategy(), m in 1u64..50) {
            let ch = Chain::new(entries).unwrap();
            let scaled = ch.scale(m).unwrap();
            prop_assert!(scaled.verify().is_ok());
            let max = *scaled.entries().iter().max().unwrap();
            let y = scaled.entries().iter().map(|&v| factorize(v).unwrap().largest()).max().unwrap();
            prop_assert!(verify_chain(scaled.entries(), Some(Context::new(max, y))).is_ok());
            prop_assert!(!verify_chain(scaled.entries(), Some(Context::new(max - 1, y))).is_ok());
        }

        #[test]
        fn glue_outputs_are_valid(a in chain_strategy(), b in chain_strategy()) {
            let ca = Chain::new(a).unwrap();
            let cb = Chain::new(b).unwrap();
            if let Ok(g) = ca.glue(&cb) {
                prop_assert!(g.verify().is_ok());
                let merged = ca.last() == cb.first();
                prop_assert_eq!(g.len(), ca.len() + cb.len() - usize::from(merged));
            }
        }

        #[test]
        fn juxtapose_outputs_are_valid(a in chain_strategy(), b in chain_strategy(), k in 1u64..40) {
            let ca = Chain::new(a).unwrap();
            let cb = Chain::new(b).unwrap();
            let connector = ca.last().unwrap() * cb.first().unwrap() * k;
            if let Ok(j) = ca.juxtapose(connector, &cb) {
                prop_assert!(j.verify().is_ok());
                prop_assert_eq!(j.len(), ca.len() + cb.len() + 1);
            }
        }
    }
}
