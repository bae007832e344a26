//! Longest chains in `𝒮(x, y)`: the integers `n ≤ x` with `P(n) ≤ y`.
//!
//! Small instances are searched by a branch-and-bound DFS. Larger ones are
//! solved as an integer program with lazily added cycle cuts (see
//! [`Method`]). Both start from the chain of [`build_chain`], so a search
//! cut short by its budget still reports a certified lower bound.

mod cuts;
mod dfs;
mod graph;

use std::fmt;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::builder::build_chain;
use crate::chain::{verify_chain, Chain, Context};
use crate::counting::{count_psi, enumerate_smooth, ENUMERATION_LIMIT};
use crate::primes::factorize;
use crate::real::{exact_at_least, floor_u64, Real};
use crate::{Error, Result};

use graph::Graph;

/// Above this many vertices no search is attempted and the builder's chain is
/// returned as a lower bound.
pub const SEARCH_VERTEX_LIMIT: u64 = 5000;

/// Largest `⌊x⌋` accepted by [`oracle_bruteforce`].
pub const ORACLE_LIMIT: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// The reported length is the maximum.
    Exact,
    /// The search stopped early; the reported length is only attained.
    LowerBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "EXACT",
            Status::LowerBound => "LOWER_BOUND",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best_length: usize,
    pub best_chain: Chain,
    pub status: Status,
    pub nodes_explored: u64,
    pub budget_used: Duration,
}

impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ctx = self.best_chain.context();
        let mut s = serializer.serialize_struct("SearchResult", 7)?;
        s.serialize_field("x", &ctx.map(|c| c.x))?;
        s.serialize_field("y", &ctx.map(|c| c.y))?;
        s.serialize_field("best_length", &self.best_length)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("nodes_explored", &self.nodes_explored)?;
        s.serialize_field(
            "budget_used_ms",
            &(self.budget_used.as_secs_f64() * 1000.0).round(),
        )?;
        s.serialize_field("entries", self.best_chain.entries())?;
        s.end()
    }
}

/// Search engine used by [`search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Branch-and-bound up to 32 vertices, cutting planes beyond.
    #[default]
    Auto,
    /// DFS only; at most 128 vertices.
    BranchAndBound,
    CuttingPlane,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: Duration,
    pub method: Method,
    /// An extra starting incumbent; must be a valid chain in `𝒮(x, y)`.
    pub seed: Option<Chain>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Duration::from_secs(60),
            method: Method::Auto,
            seed: None,
        }
    }
}

/// `f(x, y)` within `budget`, seeded with [`build_chain`].
pub fn longest_chain_exact(x: impl Real, y: impl Real, budget: Duration) -> Result<SearchResult> {
    search(
        x,
        y,
        &SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    )
}

pub fn search(x: impl Real, y: impl Real, options: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let deadline = start
        .checked_add(options.budget)
        .unwrap_or(start + Duration::from_secs(1 << 40));
    let fx = floor_u64(&exact_at_least("x", &x, 1, "at least 1")?);
    let fy = floor_u64(&exact_at_least("y", &y, 2, "at least 2")?);
    if fx > ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded {
            what: "x",
            value: fx,
            limit: ENUMERATION_LIMIT,
        });
    }
    let ctx = Context::new(fx, fy);
    let finish = |chain: Chain, status: Status, nodes: u64| -> Result<SearchResult> {
        let chain = chain.in_context(ctx)?;
        Ok(SearchResult {
            best_length: chain.len(),
            best_chain: chain,
            status,
            nodes_explored: nodes,
            budget_used: start.elapsed(),
        })
    };
    if fx < 2 {
        return finish(Chain::from_trusted(vec![1]), Status::Exact, 1);
    }

    let mut incumbent = build_chain(fx, fy)?;
    if let Some(seed) = &options.seed {
        let report = verify_chain(seed.entries(), Some(ctx));
        if !report.is_ok() {
            return Err(Error::invalid("seed", "a valid chain in S(x, y)", report));
        }
        if seed.len() > incumbent.len() {
            incumbent = seed.clone();
        }
    }
    let vertices = count_psi(fx, fy)?;
    if incumbent.len() as u64 == vertices {
        return finish(incumbent, Status::Exact, 0);
    }
    if vertices > SEARCH_VERTEX_LIMIT {
        return finish(incumbent, Status::LowerBound, 0);
    }

    let g = Graph::new(enumerate_smooth(fx, fy)?);
    let seed = g.indices_of(incumbent.entries());
    let use_dfs = match options.method {
        Method::Auto => g.len() <= 32,
        Method::BranchAndBound if g.len() > dfs::MAX_VERTICES => {
            return Err(Error::LimitExceeded {
                what: "vertices for branch-and-bound",
                value: g.len() as u64,
                limit: dfs::MAX_VERTICES as u64,
            })
        }
        Method::BranchAndBound => true,
        Method::CuttingPlane => false,
    };
    let (best, nodes, complete) = if use_dfs {
        let out = dfs::longest_path(&g, seed, deadline);
        (out.best, out.nodes, out.complete)
    } else {
        let out = cuts::longest_path(&g, seed, deadline)?;
        (out.best, out.nodes, out.complete)
    };
    let status = if complete {
        Status::Exact
    } else {
        Status::LowerBound
    };
    finish(Chain::new(g.values_of(&best))?, status, nodes)
}

/// `f(x, y)` by exhaustive DFS from every vertex, pruning nothing but
/// revisits. Independent of [`search`]; limited to `⌊x⌋ ≤ 24`.
pub fn oracle_bruteforce(x: impl Real, y: impl Real) -> Result<SearchResult> {
    let start = Instant::now();
    let fx = floor_u64(&exact_at_least("x", &x, 1, "at least 1")?);
    let fy = floor_u64(&exact_at_least("y", &y, 1, "at least 1")?);
    if fx > ORACLE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "x",
            value: fx,
            limit: ORACLE_LIMIT,
        });
    }
    let vertices: Vec<u64> = (1..=fx)
        .filter(|&n| factorize(n).map(|f| f.largest() <= fy).unwrap_or(false))
        .collect();
    let n = vertices.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    let (a, b) = (vertices[i], vertices[j]);
                    i != j && (a % b == 0 || b % a == 0)
                })
                .collect()
        })
        .collect();

    struct Walk<'a> {
        adj: &'a [Vec<usize>],
        visited: Vec<bool>,
        path: Vec<usize>,
        best: Vec<usize>,
        nodes: u64,
    }
    impl Walk<'_> {
        fn go(&mut self, u: usize) {
            self.nodes += 1;
            if self.path.len() > self.best.len() {
                self.best = self.path.clone();
            }
            for &v in &self.adj[u] {
                if !self.visited[v] {
                    self.visited[v] = true;
                    self.path.push(v);
                    self.go(v);
                    self.path.pop();
                    self.visited[v] = false;
                }
            }
        }
    }
    let mut walk = Walk {
        adj: &adj,
        visited: vec![false; n],
        path: Vec::new(),
        best: Vec::new(),
        nodes: 0,
    };
    for s in 0..n {
        walk.visited[s] = true;
        walk.path.push(s);
        walk.go(s);
        walk.path.pop();
        walk.visited[s] = false;
    }
    let entries: Vec<u64> = walk.best.iter().map(|&i| vertices[i]).collect();
    let chain = Chain::with_context(entries, Context::new(fx, fy))?;
    Ok(SearchResult {
        best_length: chain.len(),
        best_chain: chain,
        status: Status::Exact,
        nodes_explored: walk.nodes,
        budget_used: start.elapsed(),
    })
}
