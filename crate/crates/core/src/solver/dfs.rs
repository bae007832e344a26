//! Branch-and-bound DFS over graphs of at most 128 vertices, with vertex sets
//! held in `u128` bitsets.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::graph::Graph;

pub(crate) const MAX_VERTICES: usize = 128;

/// Per-root memo of fully explored `(end, visited)` states.
const MEMO_CAP: usize = 1 << 20;

pub(crate) struct Outcome {
    pub best: Vec<usize>,
    pub nodes: u64,
    pub complete: bool,
}

struct Shared {
    adj: Vec<u128>,
    all: u128,
    best_len: AtomicUsize,
    best: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    deadline: Instant,
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

/// Longest path in `g`, starting from `incumbent`, until `deadline`.
pub(crate) fn longest_path(g: &Graph, incumbent: Vec<usize>, deadline: Instant) -> Outcome {
    let n = g.len();
    assert!(n <= MAX_VERTICES);
    // Rank vertices by descending degree, then ascending value.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.adj[v].len()), g.values[v]));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let adj = order
        .iter()
        .map(|&v| g.adj[v].iter().fold(0u128, |acc, &w| acc | bit(rank[w])))
        .collect();
    let shared = Shared {
        adj,
        all: if n == 128 { u128::MAX } else { bit(n) - 1 },
        best_len: AtomicUsize::new(incumbent.len()),
        best: Mutex::new(incumbent.iter().map(|&v| rank[v]).collect()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        deadline,
    };
    (0..n).into_par_iter().for_each(|root| {
        if shared.stop.load(Ordering::Relaxed) {
            return;
        }
        let mut w = Worker {
            s: &shared,
            path: vec![root],
            memo: HashSet::new(),
            ticks: 0,
        };
        w.dfs(root, bit(root));
        shared.nodes.fetch_add(w.ticks, Ordering::Relaxed);
    });
    let best = shared.best.into_inner().expect("no worker panicked");
    Outcome {
        best: best.into_iter().map(|r| order[r]).collect(),
        nodes: shared.nodes.into_inner(),
        complete: !shared.stop.into_inner(),
    }
}

struct Worker<'a> {
    s: &'a Shared,
    path: Vec<usize>,
    memo: HashSet<(u8, u128)>,
    ticks: u64,
}

impl Worker<'_> {
    /// Vertices reachable from `u` through `free`.
    fn reach(&self, u: usize, free: u128) -> u128 {
        let mut seen = 0u128;
        let mut frontier = self.s.adj[u] & free;
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                next |= self.s.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & free & !seen;
        }
        seen
    }

    /// Upper bound on the number of vertices a path from `u` can still add:
    /// the reachable set, where at most one vertex of degree ≤ 1 can be used.
    fn bound(&self, u: usize, free: u128) -> usize {
        let r = self.reach(u, free);
        let scope = r | bit(u);
        let mut leaves = 0;
        let mut f = r;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            if (self.s.adj[v] & scope).count_ones() <= 1 {
                leaves += 1;
            }
        }
        (r.count_ones() as usize + 1).saturating_sub(leaves.max(1))
    }

    fn record(&self, len: usize) {
        let mut best = self.s.best.lock().expect("no worker panicked");
        if len > best.len() {
            *best = self.path.clone();
            self.s.best_len.fetch_max(len, Ordering::Relaxed);
        }
    }

    fn dfs(&mut self, u: usize, visited: u128) {
        self.ticks += 1;
        if self.ticks % 1024 == 0 && Instant::now() >= self.s.deadline {
            self.s.stop.store(true, Ordering::Relaxed);
        }
        if self.s.stop.load(Ordering::Relaxed) {
            return;
        }
        let len = self.path.len();
        if len > self.s.best_len.load(Ordering::Relaxed) {
            self.record(len);
        }
        let free = self.s.all & !visited;
        if len + self.bound(u, free) <= self.s.best_len.load(Ordering::Relaxed) {
            return;
        }
        if self.memo.contains(&(u as u8, visited)) {
            return;
        }
        let mut candidates = self.s.adj[u] & free;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.path.push(v);
            self.dfs(v, visited | bit(v));
            self.path.pop();
        }
        if self.memo.len() < MEMO_CAP && !self.s.stop.load(Ordering::Relaxed) {
            self.memo.insert((u as u8, visited));
        }
    }
}
