//! Sequences of a partitioned set with no two neighbours in the same block.
//!
//! Such a sequence exists iff no block holds more than `(n+1)/2` of the `n`
//! elements. The construction repeatedly takes one element from each of the
//! two largest blocks and then lays the pairs out around the leftover.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("blocks {first} and {second} share an element")]
    Overlap { first: usize, second: usize },
    #[error("block {block} has {size} of {total} elements, more than (n+1)/2")]
    Infeasible {
        block: usize,
        size: usize,
        total: usize,
    },
    #[error("there are no elements to arrange")]
    Empty,
}

/// Whether blocks of these sizes admit an arrangement: `2·max ≤ n + 1`.
/// False for an empty list.
pub fn feasible(block_sizes: &[usize]) -> bool {
    let total: usize = block_sizes.iter().sum();
    match block_sizes.iter().max() {
        Some(&max) => 2 * max <= total + 1,
        None => false,
    }
}

/// A permutation of the union of `blocks` whose consecutive elements come
/// from different blocks.
pub fn arrange<T: Clone + Eq + Hash>(blocks: &[Vec<T>]) -> Result<Vec<T>, OrderingError> {
    let mut owner = HashMap::new();
    for (i, block) in blocks.iter().enumerate() {
        for e in block {
            if let Some(&first) = owner.get(e) {
                return Err(OrderingError::Overlap { first, second: i });
            }
            owner.insert(e, i);
        }
    }
    let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Err(OrderingError::Empty);
    }
    if !feasible(&sizes) {
        let (block, &size) = sizes
            .iter()
            .enumerate()
            .max_by_key(|&(i, &s)| (s, std::cmp::Reverse(i)))
            .expect("at least one block");
        return Err(OrderingError::Infeasible { block, size, total });
    }

    let mut remaining = sizes.clone();
    let take = |b: usize, remaining: &mut Vec<usize>| {
        remaining[b] -= 1;
        (b, sizes[b] - remaining[b] - 1)
    };
    let mut pairs = Vec::with_capacity(total / 2);
    let mut left = total;
    while left >= 2 {
        let mut order: Vec<usize> = (0..blocks.len()).filter(|&b| remaining[b] > 0).collect();
        order.sort_by_key(|&b| (std::cmp::Reverse(remaining[b]), b));
        let (first, second) = (order[0], order[1]);
        let f = take(first, &mut remaining);
        let g = take(second, &mut remaining);
        pairs.push((f, g));
        left -= 2;
    }

    let mut seq: VecDeque<(usize, usize)> = VecDeque::with_capacity(total);
    if left == 1 {
        let b = (0..blocks.len())
            .find(|&b| remaining[b] > 0)
            .expect("one element left");
        seq.push_back(take(b, &mut remaining));
    }
    for &(f, g) in pairs.iter().rev() {
        let (outer, inner) = match seq.front() {
            Some(&(b, _)) if b == g.0 => (g, f),
            _ => (f, g),
        };
        seq.push_front(inner);
        seq.push_front(outer);
    }
    Ok(seq.into_iter().map(|(b, i)| blocks[b][i].clone()).collect())
}
