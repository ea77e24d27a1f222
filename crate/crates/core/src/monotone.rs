//! Monotone subsequences and edge-disjoint path systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneWitness {
    pub indices: Vec<usize>,
    pub direction: Direction,
}

impl MonotoneWitness {
    /// Whether the indices are increasing and pick a strictly monotone run of `seq`.
    pub fn is_valid_for<T: Ord>(&self, seq: &[T]) -> bool {
        self.indices.windows(2).all(|w| {
            w[0] < w[1]
                && w[1] < seq.len()
                && match self.direction {
                    Direction::Increasing => seq[w[0]] < seq[w[1]],
                    Direction::Decreasing => seq[w[0]] > seq[w[1]],
                }
        }) && self.indices.iter().all(|&i| i < seq.len())
    }
}

/// Length of the longest strictly increasing subsequence starting at each index.
fn longest_from<T: Ord + Clone>(seq: &[T]) -> Vec<usize> {
    let mut out = vec![0; seq.len()];
    // tails[l]: largest first element among increasing runs of length l + 1 seen so far.
    let mut tails: Vec<T> = Vec::new();
    for i in (0..seq.len()).rev() {
        let x = &seq[i];
        // tails is strictly decreasing; count entries greater than x.
        let l = tails.partition_point(|t| t > x);
        if l == tails.len() {
            tails.push(x.clone());
        } else if tails[l] < *x {
            tails[l] = x.clone();
        }
        out[i] = l + 1;
    }
    out
}

/// Lexicographically least index list of a strictly monotone run of length `len`.
fn greedy<T: Ord>(
    seq: &[T],
    from: &[usize],
    len: usize,
    better: impl Fn(&T, &T) -> bool,
) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::with_capacity(len);
    for (j, x) in seq.iter().enumerate() {
        if picked.len() == len {
            break;
        }
        let need = len - picked.len();
        let fits = picked.last().is_none_or(|&p| better(&seq[p], x));
        if fits && from[j] >= need {
            picked.push(j);
        }
    }
    picked
}

/// Monotone subsequence extraction: a strictly increasing run of length `r`
/// if one exists, otherwise a strictly decreasing run of length `s`.
/// Requires pairwise distinct values. A run is always found when
/// `|seq| ≥ (r−1)(s−1)+1`; shorter sequences fail only if neither run exists.
pub fn erdos_szekeres<T: Ord + Clone>(seq: &[T], r: usize, s: usize) -> Result<MonotoneWitness> {
    if r == 0 || s == 0 {
        return Err(Error::Precondition("r and s must be positive".into()));
    }
    let mut sorted: Vec<&T> = seq.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(
            "sequence values must be pairwise distinct".into(),
        ));
    }
    let inc = longest_from(seq);
    if inc.iter().any(|&l| l >= r) {
        let indices = greedy(seq, &inc, r, |a, b| a < b);
        return Ok(MonotoneWitness {
            indices,
            direction: Direction::Increasing,
        });
    }
    let rev: Vec<std::cmp::Reverse<T>> = seq.iter().cloned().map(std::cmp::Reverse).collect();
    let dec = longest_from(&rev);
    if dec.iter().any(|&l| l >= s) {
        let indices = greedy(seq, &dec, s, |a, b| a > b);
        return Ok(MonotoneWitness {
            indices,
            direction: Direction::Decreasing,
        });
    }
    Err(Error::Precondition(format!(
        "sequence has {} elements and no run of either length; at least {} guarantee one",
        seq.len(),
        (r - 1) * (s - 1) + 1
    )))
}

/// Lexicographically least longest strictly monotone run in `direction`.
pub fn longest_monotone<T: Ord + Clone>(seq: &[T], direction: Direction) -> MonotoneWitness {
    let (from, indices) = match direction {
        Direction::Increasing => {
            let from = longest_from(seq);
            let len = from.iter().copied().max().unwrap_or(0);
            (len, greedy(seq, &from, len, |a, b| a < b))
        }
        Direction::Decreasing => {
            let rev: Vec<std::cmp::Reverse<T>> =
                seq.iter().cloned().map(std::cmp::Reverse).collect();
            let from = longest_from(&rev);
            let len = from.iter().copied().max().unwrap_or(0);
            (len, greedy(seq, &from, len, |a, b| a > b))
        }
    };
    debug_assert_eq!(from, indices.len());
    MonotoneWitness { indices, direction }
}

/// Pairs up the vertices of `terminals` by pairwise edge-disjoint paths.
///
/// Works on a breadth-first spanning tree: each subtree hands at most one
/// unpaired terminal to its parent, so every tree edge is used at most once
/// and the total length is the minimum over all pairings in that tree.
pub fn path_system(g: &Graph, terminals: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    for &t in terminals {
        g.check_vertex(t)?;
    }
    let mut is_terminal = vec![false; n];
    for &t in terminals {
        if is_terminal[t] {
            return Err(Error::Precondition(format!("terminal {t} listed twice")));
        }
        is_terminal[t] = true;
    }
    if terminals.len() % 2 == 1 {
        return Err(Error::Precondition("odd number of terminals".into()));
    }
    if terminals.is_empty() {
        return Ok(Vec::new());
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let root = terminals.iter().copied().min().unwrap();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    // carried[v]: path from an unpaired terminal up to v
    let mut carried: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &order[1..] {
        children[parent[v]].push(v);
    }
    let mut paths = Vec::new();
    for &v in order.iter().rev() {
        let mut open: Vec<Vec<usize>> = Vec::new();
        if is_terminal[v] {
            open.push(vec![v]);
        }
        for &c in &children[v] {
            if let Some(mut p) = carried[c].take() {
                p.push(v);
                open.push(p);
            }
        }
        let pass = if open.len() % 2 == 1 {
            Some(open.remove(0))
        } else {
            None
        };
        for pair in open.chunks(2) {
            let mut p = pair[0].clone();
            p.extend(pair[1].iter().rev().skip(1));
            paths.push(p);
        }
        carried[v] = pass;
    }
    debug_assert!(carried[root].is_none());
    for p in &mut paths {
        if p[0] > p[p.len() - 1] {
            p.reverse();
        }
    }
    paths.sort();
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::path;

    #[test]
    fn small_cases() {
        let w = erdos_szekeres(&[1, 2, 3], 3, 3).unwrap();
        assert_eq!(
            (w.indices, w.direction),
            (vec![0, 1, 2], Direction::Increasing)
        );
        let w = erdos_szekeres(&[3, 2, 1], 2, 3).unwrap();
        assert_eq!(
            (w.indices, w.direction),
            (vec![0, 1, 2], Direction::Decreasing)
        );
        let w = erdos_szekeres(&[2, 1, 4, 3, 6, 5], 4, 2).unwrap();
        assert_eq!(
            (w.indices, w.direction),
            (vec![0, 1], Direction::Decreasing)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(erdos_szekeres(&[1, 1, 2], 2, 2).is_err());
        assert!(erdos_szekeres(&[2, 1], 3, 3).is_err());
    }

    #[test]
    fn lexicographically_least() {
        let w = erdos_szekeres(&[5, 1, 6, 2, 7, 3], 3, 4).unwrap();
        assert_eq!(w.indices, vec![0, 2, 4]);
        let w = erdos_szekeres(&[4, 9, 1, 2, 3], 3, 3).unwrap();
        assert_eq!(w.indices, vec![2, 3, 4]);
    }

    #[test]
    fn path_systems() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(path_system(&star, &[1, 2]).unwrap(), vec![vec![1, 0, 2]]);
        assert_eq!(
            path_system(&path(4), &[0, 3]).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        let spider = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let ps = path_system(&spider, &[1, 2, 3, 4]).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.iter().map(|p| p.len() - 1).sum::<usize>(), 4);
        assert!(path_system(&star, &[1]).is_err());
    }
}
