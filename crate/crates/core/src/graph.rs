//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeList", try_from = "EdgeList")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// JSON interchange form: `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<Graph> for EdgeList {
    fn from(g: Graph) -> Self {
        EdgeList {
            n: g.vertex_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;

    fn try_from(e: EdgeList) -> Result<Self> {
        let edges: Vec<(usize, usize)> = e.edges.iter().map(|p| (p[0], p[1])).collect();
        Graph::from_edges(e.n, &edges)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.vertex_count() || v >= self.vertex_count() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|nb| nb.len() == 3)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// Induced subgraph on `vs`; returns the subgraph and the map new index -> old index.
    pub fn induced_subgraph(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        let mut order: Vec<usize> = vs.to_vec();
        order.sort_unstable();
        order.dedup();
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    h.adj[i].push(j);
                    h.adj[j].push(i);
                }
            }
        }
        for nb in &mut h.adj {
            nb.sort_unstable();
        }
        (h, order)
    }

    /// BFS distances from `s` restricted to vertices with `allowed[v]` (all if `None`).
    pub fn bfs_distances_within(&self, s: usize, allowed: Option<&[bool]>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        if allowed.is_some_and(|a| !a[s]) {
            return dist;
        }
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() && allowed.is_none_or(|a| a[y]) {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        self.bfs_distances_within(s, None)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.bfs_distances(u)[v].ok_or(Error::Unreachable(u, v))
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.vertex_count() {
            for d in self.bfs_distances(s) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// Shortest `u`–`v` path inside `allowed`, as a vertex sequence.
    pub fn shortest_path_within(
        &self,
        u: usize,
        v: usize,
        allowed: Option<&[bool]>,
    ) -> Option<Vec<usize>> {
        if allowed.is_some_and(|a| !a[u] || !a[v]) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.vertex_count()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX && allowed.is_none_or(|a| a[y]) {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[v] == usize::MAX {
            return None;
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Some(path)
    }

    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        self.shortest_path_within(u, v, None)
    }

    /// Connected components of the subgraph induced by `allowed` (all vertices if `None`),
    /// each sorted, ordered by smallest vertex.
    pub fn components_within(&self, allowed: Option<&[bool]>) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || allowed.is_some_and(|a| !a[s]) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] && allowed.is_none_or(|a| a[y]) {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(None)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks that `p` is a simple path (at least one vertex) of this graph.
    pub fn check_path(&self, p: &[usize]) -> std::result::Result<(), String> {
        if p.is_empty() {
            return Err("empty path".into());
        }
        let mut seen = vec![false; self.vertex_count()];
        for &v in p {
            if v >= self.vertex_count() {
                return Err(format!("vertex {v} out of range"));
            }
            if seen[v] {
                return Err(format!("vertex {v} repeated"));
            }
            seen[v] = true;
        }
        for w in p.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(format!("missing edge {}-{}", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Checks that `c` (without repeating the first vertex) is a simple cycle of length ≥ 3.
    pub fn check_cycle(&self, c: &[usize]) -> std::result::Result<(), String> {
        if c.len() < 3 {
            return Err(format!("cycle of length {} is too short", c.len()));
        }
        self.check_path(c)?;
        let (a, b) = (c[c.len() - 1], c[0]);
        if !self.has_edge(a, b) {
            return Err(format!("missing closing edge {a}-{b}"));
        }
        Ok(())
    }
}

/// Normalized undirected edge key.
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Edges traversed by a vertex sequence, as normalized keys.
pub fn path_edges(p: &[usize]) -> Vec<(usize, usize)> {
    p.windows(2).map(|w| edge_key(w[0], w[1])).collect()
}

/// Edges of a closed vertex sequence.
pub fn cycle_edges(c: &[usize]) -> Vec<(usize, usize)> {
    let mut e = path_edges(c);
    if c.len() >= 2 {
        e.push(edge_key(c[c.len() - 1], c[0]));
    }
    e
}

/// Undirected multigraph given as an edge list; loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_subcubic(&self) -> bool {
        let mut deg = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().all(|&d| d <= 3)
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = edge_key(u, v);
        self.edges
            .iter()
            .filter(|&&(a, b)| edge_key(a, b) == key)
            .count()
    }
}

impl From<&Graph> for MultiGraph {
    fn from(g: &Graph) -> Self {
        MultiGraph {
            n: g.vertex_count(),
            edges: g.edges(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn distances() {
        let p = path(6);
        assert_eq!(p.distance(0, 5).unwrap(), 5);
        assert_eq!(p.distance(2, 3).unwrap(), 1);
        assert_eq!(p.diameter().unwrap(), 5);
        let mut q = path(3);
        q.add_vertex();
        assert_eq!(q.distance(0, 3), Err(Error::Unreachable(0, 3)));
        assert_eq!(q.diameter(), Err(Error::Disconnected));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let h: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, h);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn path_and_cycle_checks() {
        let c = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c.check_cycle(&[0, 1, 2, 3]).is_ok());
        assert!(c.check_cycle(&[0, 2, 1, 3]).is_err());
        assert!(c.check_path(&[0, 1, 0]).is_err());
    }
}
