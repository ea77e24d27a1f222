//! Small residual-network flow solvers used by the connectivity, θ and k-close code.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
    rev: usize,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    /// (node, index) of each forward arc in insertion order, with its initial capacity.
    forward: Vec<(usize, usize, i64)>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); nodes],
            forward: Vec::new(),
        }
    }

    /// Adds an arc and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let a = self.arcs[from].len();
        let b = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc {
            to,
            cap,
            cost,
            rev: b,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
            rev: a,
        });
        self.forward.push((from, a, cap));
        self.forward.len() - 1
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        let (node, idx, cap) = self.forward[id];
        cap - self.arcs[node][idx].cap
    }

    /// Endpoints of arc `id`.
    pub fn arc_ends(&self, id: usize) -> (usize, usize) {
        let (node, idx, _) = self.forward[id];
        (node, self.arcs[node][idx].to)
    }

    /// Breadth-first augmenting paths until `limit` units or no augmenting path remain.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
            let mut seen = vec![false; self.arcs.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for (i, a) in self.arcs[x].iter().enumerate() {
                    if a.cap > 0 && !seen[a.to] {
                        seen[a.to] = true;
                        prev[a.to] = Some((x, i));
                        queue.push_back(a.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = limit - total;
            let mut x = t;
            while let Some((p, i)) = prev[x] {
                push = push.min(self.arcs[p][i].cap);
                x = p;
            }
            let mut x = t;
            while let Some((p, i)) = prev[x] {
                self.arcs[p][i].cap -= push;
                let r = self.arcs[p][i].rev;
                self.arcs[x][r].cap += push;
                x = p;
            }
            total += push;
        }
        total
    }

    /// Successive shortest paths (Bellman-Ford queue variant). Returns (flow, cost).
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let nodes = self.arcs.len();
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![i64::MAX; nodes];
            let mut in_queue = vec![false; nodes];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            in_queue[s] = true;
            while let Some(x) = queue.pop_front() {
                in_queue[x] = false;
                for (i, a) in self.arcs[x].iter().enumerate() {
                    if a.cap > 0 && dist[x] + a.cost < dist[a.to] {
                        dist[a.to] = dist[x] + a.cost;
                        prev[a.to] = Some((x, i));
                        if !in_queue[a.to] {
                            in_queue[a.to] = true;
                            queue.push_back(a.to);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut x = t;
            while let Some((p, i)) = prev[x] {
                push = push.min(self.arcs[p][i].cap);
                x = p;
            }
            let mut x = t;
            while let Some((p, i)) = prev[x] {
                self.arcs[p][i].cap -= push;
                let r = self.arcs[p][i].rev;
                self.arcs[x][r].cap += push;
                x = p;
            }
            flow += push;
            cost += push * dist[t];
        }
        (flow, cost)
    }
}
