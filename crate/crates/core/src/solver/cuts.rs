//! Longest path as an integer program, with subtour elimination cuts added
//! lazily.
//!
//! Binary `x_v` selects vertex `v`, `y_e` selects edge `e` and `s_v` marks an
//! endpoint. Degrees satisfy `Σ_{e∋v} y_e = 2x_v − s_v`, `s_v ≤ x_v` and
//! `Σ s_v = 2`, so a feasible point is one path plus disjoint cycles. Every
//! cycle found is forbidden by `Σ_{e⊆C} y_e ≤ |C| − 1` and the program is
//! solved again, each time asking for a path longer than the incumbent. When
//! that becomes infeasible the incumbent is optimal.

use std::time::Instant;

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolutionStatus, SolveOptions};

use super::graph::Graph;
use crate::{Error, Result};

pub(crate) struct Outcome {
    pub best: Vec<usize>,
    pub nodes: u64,
    pub complete: bool,
}

pub(crate) fn longest_path(g: &Graph, incumbent: Vec<usize>, deadline: Instant) -> Result<Outcome> {
    let n = g.len();
    let edges = g.edges();
    let mut incident = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut best = incumbent;
    let mut cuts: Vec<Vec<usize>> = Vec::new();
    let mut nodes = 0u64;
    loop {
        let now = Instant::now();
        if best.len() == n || now >= deadline {
            return Ok(Outcome {
                complete: best.len() == n,
                best,
                nodes,
            });
        }
        nodes += 1;
        let mut p = Problem::new(OptimizationDirection::Maximize);
        let xv: Vec<_> = (0..n).map(|_| p.add_binary_var(1.0)).collect();
        let sv: Vec<_> = (0..n).map(|_| p.add_binary_var(0.0)).collect();
        let ye: Vec<_> = edges.iter().map(|_| p.add_binary_var(0.0)).collect();
        for v in 0..n {
            let mut degree: Vec<_> = incident[v].iter().map(|&e| (ye[e], 1.0)).collect();
            degree.push((xv[v], -2.0));
            degree.push((sv[v], 1.0));
            p.add_constraint(degree, ComparisonOp::Eq, 0.0);
            p.add_constraint([(sv[v], 1.0), (xv[v], -1.0)], ComparisonOp::Le, 0.0);
        }
        p.add_constraint(
            sv.iter().map(|&s| (s, 1.0)).collect::<Vec<_>>(),
            ComparisonOp::Eq,
            2.0,
        );
        p.add_constraint(
            xv.iter().map(|&x| (x, 1.0)).collect::<Vec<_>>(),
            ComparisonOp::Ge,
            best.len() as f64 + 1.0,
        );
        let mut member = vec![false; n];
        for cycle in &cuts {
            cycle.iter().for_each(|&v| member[v] = true);
            let inside: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| member[a] && member[b])
                .map(|(i, _)| (ye[i], 1.0))
                .collect();
            p.add_constraint(inside, ComparisonOp::Le, (cycle.len() - 1) as f64);
            cycle.iter().for_each(|&v| member[v] = false);
        }

        let mut options = SolveOptions::default();
        options.time_limit = Some(deadline - now);
        let solution = match p.solve_with(options) {
            Err(microlp::Error::Infeasible) => {
                return Ok(Outcome {
                    best,
                    nodes,
                    complete: true,
                })
            }
            Err(e) => return Err(Error::Backend(e.to_string())),
            Ok(outcome) => {
                nodes += outcome.stats().nodes_solved;
                match outcome.into_solution() {
                    Ok(solution) => solution,
                    Err(_) => {
                        return Ok(Outcome {
                            best,
                            nodes,
                            complete: false,
                        })
                    }
                }
            }
        };

        let mut chosen = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if solution.var_value(ye[i]) > 0.5 {
                chosen[a].push(b);
                chosen[b].push(a);
            }
        }
        let (path, cycles) = components(&chosen);
        let found_cycles = !cycles.is_empty();
        let repaired = repair(g, path, cycles.clone());
        if repaired.len() > best.len() {
            best = repaired;
        }
        if solution.status() != SolutionStatus::Optimal {
            return Ok(Outcome {
                best,
                nodes,
                complete: false,
            });
        }
        if !found_cycles {
            return Ok(Outcome {
                best,
                nodes,
                complete: true,
            });
        }
        cuts.extend(cycles);
    }
}

/// The path component and the cycle components of a solution, each as a
/// vertex sequence in walking order.
fn components(chosen: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = chosen.len();
    let mut seen = vec![false; n];
    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut seq = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(&next) = chosen[cur].iter().find(|&&b| !seen[b]) {
            seen[next] = true;
            seq.push(next);
            cur = next;
        }
        seq
    };
    let mut path = Vec::new();
    for v in 0..n {
        if !seen[v] && chosen[v].len() == 1 {
            let p = walk(v, &mut seen);
            if p.len() > path.len() {
                path = p;
            }
        }
    }
    let mut cycles = Vec::new();
    for v in 0..n {
        if !seen[v] && !chosen[v].is_empty() {
            cycles.push(walk(v, &mut seen));
        }
    }
    (path, cycles)
}

/// Splices cycles into the path where an opening fits, then inserts unused
/// vertices wherever they fit.
#[allow(clippy::needless_range_loop)]
fn repair(g: &Graph, mut path: Vec<usize>, mut cycles: Vec<Vec<usize>>) -> Vec<usize> {
    'again: loop {
        for ci in 0..cycles.len() {
            let c = &cycles[ci];
            let m = c.len();
            for i in 0..m {
                for step in [1, m - 1] {
                    let rot: Vec<usize> = (0..m).map(|k| c[(i + k * step) % m]).collect();
                    let (head, tail) = (rot[0], rot[m - 1]);
                    let spliced = if path.is_empty() {
                        Some(rot)
                    } else if g.related(path[path.len() - 1], head) {
                        Some([path.as_slice(), &rot].concat())
                    } else if g.related(tail, path[0]) {
                        Some([rot.as_slice(), &path].concat())
                    } else {
                        (0..path.len() - 1)
                            .find(|&j| g.related(path[j], head) && g.related(tail, path[j + 1]))
                            .map(|j| [&path[..=j], rot.as_slice(), &path[j + 1..]].concat())
                    };
                    if let Some(p) = spliced {
                        path = p;
                        cycles.swap_remove(ci);
                        continue 'again;
                    }
                }
            }
        }
        break;
    }
    let mut used = vec![false; g.len()];
    path.iter().for_each(|&v| used[v] = true);
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..g.len() {
            if used[v] {
                continue;
            }
            let slot = if path.is_empty() || g.related(path[path.len() - 1], v) {
                Some(path.len())
            } else if g.related(v, path[0]) {
                Some(0)
            } else {
                (0..path.len() - 1)
                    .find(|&j| g.related(path[j], v) && g.related(v, path[j + 1]))
                    .map(|j| j + 1)
            };
            if let Some(at) = slot {
                path.insert(at, v);
                used[v] = true;
                changed = true;
            }
        }
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn known_values() {
        for (x, f) in [(6, 6), (10, 9), (20, 17), (30, 26), (40, 32)] {
            let g = Graph::new((1..=x).collect());
            let out = longest_path(&g, vec![0], Instant::now() + Duration::from_secs(120)).unwrap();
            assert!(out.complete);
            assert_eq!(out.best.len(), f, "f({x})");
            assert!(crate::chain::verify_chain(&g.values_of(&out.best), None).is_ok());
        }
    }

    #[test]
    fn repair_splices_cycles() {
        let g = Graph::new((1..=12).collect());
        let idx = |v: u64| v as usize - 1;
        let path = vec![idx(5), idx(10)];
        let cycle = vec![idx(3), idx(6), idx(12)];
        let out = repair(&g, path, vec![cycle]);
        let values = g.values_of(&out);
        assert!(crate::chain::verify_chain(&values, None).is_ok());
        assert!(values.contains(&3) && values.contains(&5));
    }

    #[test]
    fn hamiltonian_incumbent_is_final() {
        let g = Graph::new(vec![1, 2, 4]);
        let out = longest_path(&g, vec![2, 1, 0], Instant::now() + Duration::from_secs(1)).unwrap();
        assert!(out.complete);
        assert_eq!(out.best.len(), 3);
    }
}
