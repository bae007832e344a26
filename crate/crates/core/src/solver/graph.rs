use std::collections::HashMap;

use crate::chain::related;

/// The divisor graph on a finite vertex set, with vertices stored by index.
pub(crate) struct Graph {
    pub values: Vec<u64>,
    pub adj: Vec<Vec<usize>>,
}

impl Graph {
    /// `values` must be ascending and distinct.
    pub fn new(values: Vec<u64>) -> Self {
        let index: HashMap<u64, usize> = values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let max = values.last().copied().unwrap_or(0);
        let mut adj = vec![Vec::new(); values.len()];
        for (i, &v) in values.iter().enumerate() {
            let mut m = 2 * v;
            while m <= max {
                if let Some(&j) = index.get(&m) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                m += v;
            }
        }
        Graph { values, adj }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        related(self.values[a], self.values[b])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            edges.extend(nbrs.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        edges
    }

    /// Indices of `entries`, which must all be vertices.
    pub fn indices_of(&self, entries: &[u64]) -> Vec<usize> {
        entries
            .iter()
            .map(|v| {
                self.values
                    .binary_search(v)
                    .expect("chain entry is a vertex")
            })
            .collect()
    }

    pub fn values_of(&self, path: &[usize]) -> Vec<u64> {
        path.iter().map(|&i| self.values[i]).collect()
    }
}
