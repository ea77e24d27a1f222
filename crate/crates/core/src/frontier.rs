//! Exact cycle-length sets by dynamic programming over an edge ordering.
//!
//! Edges are processed in a breadth-first order. A state records, for each
//! vertex on the current frontier, whether it is untouched, saturated, or the
//! end of an open path fragment (and which vertex is the other end). Each
//! state carries the set of achievable edge counts. Closing a fragment into a
//! cycle is allowed only when it is the sole open fragment.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::BuildHasherDefault;

use crate::graph::Graph;

type Map<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

const FREE: u32 = u32::MAX;
const USED: u32 = u32::MAX - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        i / 64 < self.0.len() && (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn or(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    /// `self |= other << 1`
    fn or_shifted(&mut self, other: &Bits) {
        let mut carry = 0;
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= (b << 1) | carry;
            carry = b >> 63;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.get(i))
    }
}

enum Step {
    Invalid,
    Next(Vec<u32>),
    Closed,
}

struct Plan {
    edges: Vec<(usize, usize)>,
    /// Frontier before each step, after introducing that step's new vertices.
    frontier: Vec<Vec<usize>>,
    /// Frontier after each step's departures.
    after: Vec<Vec<usize>>,
    words: usize,
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for comp in g.components() {
        let far = |s: usize| {
            let d = g.bfs_distances(s);
            *comp
                .iter()
                .max_by_key(|&&v| (d[v], std::cmp::Reverse(v)))
                .unwrap()
        };
        let start = far(far(comp[0]));
        placed[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in g.neighbors(x) {
                if !placed[y] {
                    placed[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

impl Plan {
    fn new(g: &Graph) -> Plan {
        let n = g.vertex_count();
        let order = bfs_order(g);
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = g.edges();
        edges.sort_by_key(|&(a, b)| (pos[a].max(pos[b]), pos[a].min(pos[b])));
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                first[v] = first[v].min(i);
                last[v] = i;
            }
        }
        let mut frontier = Vec::with_capacity(edges.len());
        let mut after = Vec::with_capacity(edges.len());
        let mut current: Vec<usize> = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if first[v] == i {
                    current.push(v);
                }
            }
            frontier.push(current.clone());
            current.retain(|&v| last[v] != i);
            after.push(current.clone());
        }
        Plan {
            edges,
            frontier,
            after,
            words: n / 64 + 1,
        }
    }

    /// Applies step `i` to a state keyed on the frontier before introduction.
    fn step(&self, i: usize, state: &[u32], include: bool) -> Step {
        let front = &self.frontier[i];
        let mut s: Vec<u32> = state.to_vec();
        s.resize(front.len(), FREE);
        let idx = |v: usize| front.iter().position(|&w| w == v).unwrap();
        if include {
            let (a, b) = self.edges[i];
            let (ia, ib) = (idx(a), idx(b));
            let (sa, sb) = (s[ia], s[ib]);
            if sa == USED || sb == USED {
                return Step::Invalid;
            }
            match (sa == FREE, sb == FREE) {
                (true, true) => {
                    s[ia] = b as u32;
                    s[ib] = a as u32;
                }
                (true, false) => {
                    let ic = idx(sb as usize);
                    s[ia] = sb;
                    s[ic] = a as u32;
                    s[ib] = USED;
                }
                (false, true) => {
                    let ic = idx(sa as usize);
                    s[ib] = sa;
                    s[ic] = b as u32;
                    s[ia] = USED;
                }
                (false, false) => {
                    if sa as usize == b {
                        let ends = s.iter().filter(|&&x| x != FREE && x != USED).count();
                        return if ends == 2 {
                            Step::Closed
                        } else {
                            Step::Invalid
                        };
                    }
                    let (ic, id) = (idx(sa as usize), idx(sb as usize));
                    s[ic] = sb;
                    s[id] = sa;
                    s[ia] = USED;
                    s[ib] = USED;
                }
            }
        }
        let after = &self.after[i];
        let mut out = Vec::with_capacity(after.len());
        let mut j = 0;
        for (p, &v) in front.iter().enumerate() {
            if j < after.len() && after[j] == v {
                out.push(s[p]);
                j += 1;
            } else if s[p] != FREE && s[p] != USED {
                return Step::Invalid;
            }
        }
        Step::Next(out)
    }
}

/// Forward pass of the dynamic program; optionally keeps every layer for witness recovery.
pub struct FrontierRun {
    plan: Plan,
    layers: Vec<Map<Vec<u32>, Bits>>,
    lengths: Bits,
    peak_states: usize,
}

impl FrontierRun {
    pub fn new(g: &Graph, keep_layers: bool) -> FrontierRun {
        let plan = Plan::new(g);
        let words = plan.words;
        let mut lengths = Bits::new(words);
        let mut layers = Vec::new();
        let mut current: Map<Vec<u32>, Bits> = Map::default();
        let mut zero = Bits::new(words);
        zero.set(0);
        current.insert(Vec::new(), zero);
        let mut peak_states = 1;
        for i in 0..plan.edges.len() {
            let mut next: Map<Vec<u32>, Bits> = Map::default();
            for (state, bits) in &current {
                for include in [false, true] {
                    match plan.step(i, state, include) {
                        Step::Invalid => {}
                        Step::Closed => lengths.or_shifted(bits),
                        Step::Next(s) => {
                            let slot = next.entry(s).or_insert_with(|| Bits::new(words));
                            if include {
                                slot.or_shifted(bits);
                            } else {
                                slot.or(bits);
                            }
                        }
                    }
                }
            }
            peak_states = peak_states.max(next.len());
            let prev = std::mem::replace(&mut current, next);
            if keep_layers {
                layers.push(prev);
            }
        }
        FrontierRun {
            plan,
            layers,
            lengths,
            peak_states,
        }
    }

    pub fn lengths(&self) -> BTreeSet<usize> {
        self.lengths.ones().collect()
    }

    pub fn has_length(&self, len: usize) -> bool {
        self.lengths.get(len)
    }

    /// Largest number of simultaneous states seen.
    pub fn peak_states(&self) -> usize {
        self.peak_states
    }

    /// Reconstructs a cycle with exactly `len` edges. Requires `keep_layers`.
    pub fn witness(&self, len: usize) -> Option<Vec<usize>> {
        if len == 0 || !self.lengths.get(len) || self.layers.is_empty() {
            return None;
        }
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        let mut target: Option<(usize, Vec<u32>, usize)> = None;
        'find: for i in 0..self.layers.len() {
            for state in sorted_keys(&self.layers[i]) {
                if self.layers[i][state].get(len - 1)
                    && matches!(self.plan.step(i, state, true), Step::Closed)
                {
                    target = Some((i, state.clone(), len - 1));
                    break 'find;
                }
            }
        }
        let (mut i, mut state, mut remaining) = target?;
        chosen.push(self.plan.edges[i]);
        while i > 0 {
            let prev = &self.layers[i - 1];
            let mut found = None;
            'scan: for s in sorted_keys(prev) {
                for include in [false, true] {
                    let need = remaining.checked_sub(usize::from(include));
                    let Some(need) = need else { continue };
                    if !prev[s].get(need) {
                        continue;
                    }
                    if let Step::Next(t) = self.plan.step(i - 1, s, include) {
                        if t == state {
                            found = Some((s.clone(), include, need));
                            break 'scan;
                        }
                    }
                }
            }
            let (s, include, need) = found.expect("every state has a predecessor");
            if include {
                chosen.push(self.plan.edges[i - 1]);
            }
            state = s;
            remaining = need;
            i -= 1;
        }
        Some(cycle_from_edges(&chosen))
    }
}

fn sorted_keys(m: &Map<Vec<u32>, Bits>) -> Vec<&Vec<u32>> {
    let mut keys: Vec<&Vec<u32>> = m.keys().collect();
    keys.sort();
    keys
}

fn cycle_from_edges(edges: &[(usize, usize)]) -> Vec<usize> {
    let start = edges.iter().map(|&(a, b)| a.min(b)).min().unwrap();
    let nb = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = nb(start)[0];
    while cur != start {
        cycle.push(cur);
        let next = nb(cur).into_iter().find(|&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    cycle
}

/// Exact set of cycle lengths of `g`.
pub fn cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    FrontierRun::new(g, false).lengths()
}

/// A cycle with exactly `len` edges, if one exists.
pub fn cycle_with_length(g: &Graph, len: usize) -> Option<Vec<usize>> {
    FrontierRun::new(g, true).witness(len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, petersen};

    #[test]
    fn small_graphs() {
        assert_eq!(cycle_lengths(&complete(4)), BTreeSet::from([3, 4]));
        assert_eq!(cycle_lengths(&petersen()), BTreeSet::from([5, 6, 8, 9]));
        assert_eq!(cycle_lengths(&cycle(7)), BTreeSet::from([7]));
        assert!(cycle_lengths(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()).is_empty());
    }

    #[test]
    fn witnesses_validate() {
        let g = petersen();
        for len in [5, 6, 8, 9] {
            let c = cycle_with_length(&g, len).unwrap();
            assert_eq!(c.len(), len);
            g.check_cycle(&c).unwrap();
        }
        assert!(cycle_with_length(&g, 7).is_none());
    }

    #[test]
    fn disconnected_components() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
            .unwrap();
        assert_eq!(cycle_lengths(&g), BTreeSet::from([3, 4]));
    }
}
