//! Vertex connectivity, bridges and 2-edge-cuts.

use serde::Serialize;

use crate::blocks::blocks;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;

/// Maximum number of internally disjoint `s`–`t` paths, capped at `limit`.
/// `s` and `t` must be distinct and non-adjacent.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.vertex_count();
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { n as i64 } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap, 0);
    }
    for (a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, 1, 0);
        net.add_arc(2 * b + 1, 2 * a, 1, 0);
    }
    net.max_flow(2 * s + 1, 2 * t, limit as i64) as usize
}

/// Up to `count` pairwise vertex-disjoint paths, each from a vertex of
/// `sources` to a vertex of `sinks`, using only `allowed` vertices. A vertex in
/// both sets may form a one-vertex path. With `shortest`, the total length is
/// minimum among all path systems of the returned size.
pub fn disjoint_paths(
    g: &Graph,
    sources: &[usize],
    sinks: &[usize],
    allowed: Option<&[bool]>,
    count: usize,
    shortest: bool,
) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let ok = |v: usize| allowed.is_none_or(|a| a[v]);
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 2];
    let mut arc = |net: &mut FlowNetwork, a: usize, b: usize, cost: i64| {
        let id = net.add_arc(a, b, 1, cost);
        out_arcs[a].push(id);
    };
    for v in (0..n).filter(|&v| ok(v)) {
        arc(&mut net, 2 * v, 2 * v + 1, 0);
        for &w in g.neighbors(v) {
            if ok(w) {
                arc(&mut net, 2 * v + 1, 2 * w, i64::from(shortest));
            }
        }
    }
    for &s in sources.iter().filter(|&&s| ok(s)) {
        arc(&mut net, src, 2 * s, 0);
    }
    for &t in sinks.iter().filter(|&&t| ok(t)) {
        arc(&mut net, 2 * t + 1, snk, 0);
    }
    if shortest {
        net.min_cost_flow(src, snk, count as i64);
    } else {
        net.max_flow(src, snk, count as i64);
    }
    let mut paths = Vec::new();
    for &first in &out_arcs[src] {
        if net.flow(first) == 0 {
            continue;
        }
        let mut node = net.arc_ends(first).1;
        let mut path = Vec::new();
        while node != snk {
            if node % 2 == 0 {
                path.push(node / 2);
            }
            let next = out_arcs[node]
                .iter()
                .find(|&&id| net.flow(id) > 0)
                .expect("flow is conserved");
            node = net.arc_ends(*next).1;
        }
        paths.push(path);
    }
    paths
}

/// Exact vertex connectivity. Complete graphs have connectivity n−1;
/// disconnected graphs and graphs with at most one vertex have connectivity 0.
pub fn connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best));
            }
        }
        i += 1;
    }
    best
}

pub fn is_2_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && blocks(g).cut_vertices.is_empty()
}

pub fn is_3_connected(g: &Graph) -> bool {
    g.vertex_count() >= 4 && connectivity(g) >= 3
}

/// Bridges of `g`, normalized and sorted.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let d = blocks(g);
    let mut out: Vec<(usize, usize)> = d
        .block_edges
        .iter()
        .filter(|e| e.len() == 1)
        .map(|e| e[0])
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub edges: [(usize, usize); 2],
    /// Components left after removing both edges, each sorted.
    pub sides: Vec<Vec<usize>>,
    pub non_trivial: bool,
}

/// All unordered edge pairs whose removal disconnects `g`.
pub fn two_edge_cuts(g: &Graph) -> Result<Vec<EdgeCut>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = g.edges();
    let mut h = g.clone();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            h.remove_edge(e.0, e.1);
            h.remove_edge(f.0, f.1);
            let sides = h.components();
            if sides.len() > 1 {
                let non_trivial = sides.len() == 2 && sides.iter().all(|s| s.len() >= 2);
                out.push(EdgeCut {
                    edges: [e, f],
                    sides,
                    non_trivial,
                });
            }
            h.add_edge(e.0, e.1).unwrap();
            h.add_edge(f.0, f.1).unwrap();
        }
    }
    Ok(out)
}

/// Whether `(u, v)` lies in some 2-edge-cut of a connected bridgeless graph,
/// i.e. whether deleting it leaves a bridge or disconnects the graph.
pub fn in_two_edge_cut(g: &Graph, u: usize, v: usize) -> bool {
    let mut h = g.clone();
    h.remove_edge(u, v);
    !h.is_connected() || !bridges(&h).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    #[test]
    fn small_connectivities() {
        assert_eq!(connectivity(&complete(4)), 3);
        assert_eq!(connectivity(&complete(1)), 0);
        assert_eq!(connectivity(&cycle(5)), 2);
        let mut two = cycle(3);
        two.add_vertex();
        assert_eq!(connectivity(&two), 0);
        assert!(is_3_connected(&complete(4)));
        assert!(!is_3_connected(&cycle(5)));
        assert!(is_2_connected(&cycle(5)));
    }

    #[test]
    fn cuts_of_c4() {
        let cuts = two_edge_cuts(&cycle(4)).unwrap();
        assert_eq!(cuts.len(), 6);
        assert_eq!(cuts.iter().filter(|c| c.non_trivial).count(), 2);
        assert!(two_edge_cuts(&complete(4)).unwrap().is_empty());
    }

    #[test]
    fn two_triangles_joined() {
        let g = Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
            ],
        )
        .unwrap();
        let cuts = two_edge_cuts(&g).unwrap();
        let nt: Vec<_> = cuts.iter().filter(|c| c.non_trivial).collect();
        assert_eq!(nt.len(), 1);
        assert_eq!(nt[0].edges, [(0, 3), (1, 4)]);
        assert!(in_two_edge_cut(&g, 0, 3));
        assert!(in_two_edge_cut(&g, 1, 2));
    }
}
