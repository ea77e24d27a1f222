use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{chord_path_best, ChordInstance, Step};
use crate::connectivity::{disjoint_paths, in_two_edge_cut, is_2_connected, two_edge_cuts};
use crate::error::{Error, Result};
use crate::frontier::FrontierRun;
use crate::graph::{edge_key, path_edges, Graph};
use crate::monotone::path_system;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEdgeInstance {
    pub graph: Graph,
    pub special: Vec<(usize, usize)>,
}

impl SpecialEdgeInstance {
    pub fn new(graph: Graph, special: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &special {
            if !graph.has_edge(a, b) {
                return Err(Error::Precondition(format!(
                    "special edge ({a},{b}) is not an edge"
                )));
            }
        }
        Ok(SpecialEdgeInstance { graph, special })
    }

    fn special_set(&self) -> BTreeSet<(usize, usize)> {
        self.special.iter().map(|&(a, b)| edge_key(a, b)).collect()
    }

    /// Number of special edges on the vertex path `p`.
    pub fn count(&self, p: &[usize]) -> usize {
        let s = self.special_set();
        path_edges(p).iter().filter(|e| s.contains(e)).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RewriteKind {
    /// Delete a non-special edge that lies in no 2-edge-cut.
    DeleteEdge,
    /// Replace a degree-2 vertex without special edges by an edge between its neighbours.
    Suppress,
    /// Delete such a vertex when its neighbours are already adjacent.
    DeleteVertex,
    /// Replace a special-free side of a non-trivial 2-edge-cut by a single edge
    /// between its two attachment vertices.
    Contract,
}

/// One rewrite, with enough data to carry paths of the smaller graph back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: RewriteKind,
    /// Vertices (in the graph before the step) that the rewrite touched.
    pub touched: Vec<usize>,
    /// Graph and special edges after the step.
    pub graph: Graph,
    pub special: Vec<(usize, usize)>,
    /// Vertex of the smaller graph → vertex of the larger one.
    map: Vec<usize>,
    lift: Lift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum Lift {
    Plain,
    /// A new edge `(x, y)` (smaller-graph ids) stands for this path of the larger graph.
    Expand {
        x: usize,
        y: usize,
        path: Vec<usize>,
    },
}

impl ReductionStep {
    /// Carries a path of the reduced graph back to the graph before the step.
    pub fn lift(&self, p: &[usize]) -> Vec<usize> {
        match &self.lift {
            Lift::Plain => p.iter().map(|&v| self.map[v]).collect(),
            Lift::Expand { x, y, path } => {
                let mut out = vec![self.map[p[0]]];
                for w in p.windows(2) {
                    if (w[0], w[1]) == (*x, *y) {
                        out.extend(&path[1..]);
                    } else if (w[0], w[1]) == (*y, *x) {
                        out.extend(path.iter().rev().skip(1));
                    } else {
                        out.push(self.map[w[1]]);
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPath {
    pub path: Vec<usize>,
    pub special_count: usize,
    /// Whether `|S| ≥ 2^{4k²}`, so that `k` special edges were promised.
    pub guaranteed: bool,
    pub trace: Vec<ReductionStep>,
}

/// Rebuilds `g` on the vertices with `keep[v]`, renumbered in order.
fn restrict(
    g: &Graph,
    special: &BTreeSet<(usize, usize)>,
    keep: &[bool],
) -> (Graph, BTreeSet<(usize, usize)>, Vec<usize>) {
    let map: Vec<usize> = (0..g.vertex_count()).filter(|&v| keep[v]).collect();
    let (h, _) = g.induced_subgraph(&map);
    let mut back = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in map.iter().enumerate() {
        back[v] = i;
    }
    let s = special
        .iter()
        .filter(|&&(a, b)| keep[a] && keep[b])
        .map(|&(a, b)| edge_key(back[a], back[b]))
        .collect();
    (h, s, map)
}

fn step(
    kind: RewriteKind,
    touched: Vec<usize>,
    g: Graph,
    s: BTreeSet<(usize, usize)>,
    map: Vec<usize>,
    lift: Lift,
) -> ReductionStep {
    ReductionStep {
        kind,
        touched,
        graph: g,
        special: s.into_iter().collect(),
        map,
        lift,
    }
}

fn try_delete_edge(g: &Graph, s: &BTreeSet<(usize, usize)>) -> Option<ReductionStep> {
    let (a, b) = g
        .edges()
        .into_iter()
        .find(|e| !s.contains(e) && !in_two_edge_cut(g, e.0, e.1))?;
    let mut h = g.clone();
    h.remove_edge(a, b);
    let map = (0..g.vertex_count()).collect();
    Some(step(
        RewriteKind::DeleteEdge,
        vec![a, b],
        h,
        s.clone(),
        map,
        Lift::Plain,
    ))
}

fn try_suppress(g: &Graph, s: &BTreeSet<(usize, usize)>) -> Option<ReductionStep> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != 2 {
            continue;
        }
        let (a, b) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        if s.contains(&edge_key(a, v)) || s.contains(&edge_key(b, v)) {
            continue;
        }
        let mut keep = vec![true; g.vertex_count()];
        keep[v] = false;
        let (mut h, hs, map) = restrict(g, s, &keep);
        let idx = |x: usize| map.binary_search(&x).unwrap();
        let (x, y) = (idx(a), idx(b));
        if g.has_edge(a, b) {
            if is_2_connected(&h) {
                return Some(step(
                    RewriteKind::DeleteVertex,
                    vec![v],
                    h,
                    hs,
                    map,
                    Lift::Plain,
                ));
            }
        } else {
            h.add_edge(x, y).unwrap();
            if is_2_connected(&h) {
                let lift = Lift::Expand {
                    x,
                    y,
                    path: vec![a, v, b],
                };
                return Some(step(RewriteKind::Suppress, vec![v], h, hs, map, lift));
            }
        }
    }
    None
}

fn try_contract(g: &Graph, s: &BTreeSet<(usize, usize)>) -> Option<ReductionStep> {
    for cut in two_edge_cuts(g).ok()? {
        if !cut.non_trivial {
            continue;
        }
        for side in &cut.sides {
            // a two-vertex side is already a single edge
            if side.len() <= 2 {
                continue;
            }
            let mut inside = vec![false; g.vertex_count()];
            for &v in side {
                inside[v] = true;
            }
            if s.iter().any(|&(a, b)| inside[a] && inside[b]) {
                continue;
            }
            let ends: Vec<(usize, usize)> = cut
                .edges
                .iter()
                .map(|&(a, b)| if inside[a] { (a, b) } else { (b, a) })
                .collect();
            let (a1, a2) = (ends[0].0, ends[1].0);
            let inner = g.shortest_path_within(a1, a2, Some(&inside))?;
            let mut keep: Vec<bool> = inside.iter().map(|&i| !i).collect();
            keep[a1] = true;
            keep[a2] = true;
            let (mut h, hs, map) = restrict(g, s, &keep);
            let idx = |x: usize| map.binary_search(&x).unwrap();
            let (x, y) = (idx(a1), idx(a2));
            for v in [x, y] {
                let nbrs: Vec<usize> = h.neighbors(v).to_vec();
                for w in nbrs {
                    if w == x || w == y {
                        h.remove_edge(v, w);
                    }
                }
            }
            h.add_edge(x, y).ok()?;
            let lift = Lift::Expand { x, y, path: inner };
            return Some(step(RewriteKind::Contract, side.clone(), h, hs, map, lift));
        }
    }
    None
}

/// Applies the rewrites in the order edge deletion, suppression, contraction,
/// restarting after every change, until none applies.
pub fn reduce(inst: &SpecialEdgeInstance) -> Vec<ReductionStep> {
    let mut g = inst.graph.clone();
    let mut s = inst.special_set();
    let mut trace = Vec::new();
    loop {
        let next = try_delete_edge(&g, &s)
            .or_else(|| try_suppress(&g, &s))
            .or_else(|| try_contract(&g, &s));
        let Some(st) = next else { break };
        g = st.graph.clone();
        s = st.special.iter().copied().collect();
        trace.push(st);
    }
    trace
}

fn count_special(s: &BTreeSet<(usize, usize)>, p: &[usize]) -> usize {
    path_edges(p).iter().filter(|e| s.contains(e)).count()
}

/// A `u`–`v` path through a special edge avoiding `blocked`, if one exists.
fn reroute(
    g: &Graph,
    s: &BTreeSet<(usize, usize)>,
    u: usize,
    v: usize,
    blocked: &[bool],
) -> Option<Vec<usize>> {
    let allowed: Vec<bool> = blocked.iter().map(|b| !b).collect();
    for &(a, b) in s {
        if !allowed[a] || !allowed[b] {
            continue;
        }
        let paths = disjoint_paths(g, &[u, v], &[a, b], Some(&allowed), 2, true);
        if paths.len() < 2 {
            continue;
        }
        let (from_u, from_v) = if paths[0][0] == u {
            (&paths[0], &paths[1])
        } else {
            (&paths[1], &paths[0])
        };
        let mut q = from_u.clone();
        q.extend(from_v.iter().rev());
        if g.check_path(&q).is_ok() {
            return Some(q);
        }
    }
    None
}

/// Long-cycle stage on a reduced graph: chords from a path system in the
/// complement of a longest cycle, then each used chord re-routed through a
/// special edge where it carries none.
fn cycle_stage(g: &Graph, s: &BTreeSet<(usize, usize)>, k: usize) -> Vec<Vec<usize>> {
    let run = FrontierRun::new(g, true);
    let Some(&longest) = run.lengths().iter().next_back() else {
        return Vec::new();
    };
    let c = run.witness(longest).unwrap();
    let len = c.len();
    let mut out = Vec::new();

    // the cycle itself minus one edge, preferring to drop a non-special one
    let drop = (0..len)
        .find(|&i| !s.contains(&edge_key(c[i], c[(i + 1) % len])))
        .unwrap_or(0);
    out.push((1..=len).map(|j| c[(drop + j) % len]).collect());

    let n = g.vertex_count();
    let mut on_cycle = vec![usize::MAX; n];
    for (i, &v) in c.iter().enumerate() {
        on_cycle[v] = i;
    }
    let mut h = g.clone();
    for i in 0..len {
        h.remove_edge(c[i], c[(i + 1) % len]);
    }
    let mut system: Vec<Vec<usize>> = Vec::new();
    for comp in h.components() {
        let mut terminals: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| on_cycle[v] != usize::MAX && g.degree(v) == 3)
            .collect();
        if terminals.len() % 2 == 1 {
            terminals.pop();
        }
        if terminals.len() < 2 {
            continue;
        }
        let (sub, back) = h.induced_subgraph(&comp);
        let local: Vec<usize> = terminals
            .iter()
            .map(|t| back.binary_search(t).unwrap())
            .collect();
        if let Ok(paths) = path_system(&sub, &local) {
            system.extend(
                paths
                    .into_iter()
                    .map(|p| p.into_iter().map(|x| back[x]).collect::<Vec<_>>()),
            );
        }
    }
    if system.is_empty() {
        return out;
    }
    let chords: Vec<(usize, usize)> = system
        .iter()
        .map(|p| (on_cycle[p[0]], on_cycle[p[p.len() - 1]]))
        .collect();
    let mut best: Option<super::ChordPath> = None;
    for r in 0..len {
        let inst = ChordInstance {
            n: len,
            path: (0..len).map(|j| (r + j) % len).collect(),
            chords: chords.clone(),
        };
        if let Ok(p) = chord_path_best(&inst, k) {
            if best
                .as_ref()
                .is_none_or(|b| p.chord_count() > b.chord_count())
            {
                best = Some(p);
            }
        }
    }
    let Some(cp) = best else { return out };
    // expand chords into paths of g, keeping track of which segment came from which chord
    let mut path = vec![c[cp.vertices[0]]];
    let mut pieces: Vec<(usize, usize, usize)> = Vec::new(); // (chord, start index, end index)
    for (i, st) in cp.steps.iter().enumerate() {
        match *st {
            Step::Path => path.push(c[cp.vertices[i + 1]]),
            Step::Chord(id) => {
                let q = &system[id];
                let start = path.len() - 1;
                if q[0] == *path.last().unwrap() {
                    path.extend(&q[1..]);
                } else {
                    path.extend(q.iter().rev().skip(1));
                }
                pieces.push((id, start, path.len() - 1));
            }
        }
    }
    // re-route chord paths without a special edge, last piece first so indices stay valid
    for &(_, start, end) in pieces.iter().rev() {
        if count_special(s, &path[start..=end]) > 0 {
            continue;
        }
        let mut blocked = vec![false; n];
        for (i, &v) in path.iter().enumerate() {
            blocked[v] = i <= start || i >= end;
        }
        let (u, v) = (path[start], path[end]);
        blocked[u] = false;
        blocked[v] = false;
        // u and v stay usable only as endpoints of the new piece
        if let Some(q) = reroute(g, s, u, v, &blocked) {
            let q = if q[0] == u {
                q
            } else {
                q.into_iter().rev().collect()
            };
            path.splice(start..=end, q);
        }
    }
    out.push(path);
    out
}

/// Best special path the pipeline produces on the instance as given.
fn pipeline(inst: &SpecialEdgeInstance, k: usize) -> Result<SpecialPath> {
    let g = &inst.graph;
    if !g.is_subcubic() || !is_2_connected(g) {
        return Err(Error::Precondition(
            "graph must be 2-connected and subcubic".into(),
        ));
    }
    let s0 = inst.special_set();
    let trace = reduce(inst);
    let (rg, rs) = match trace.last() {
        Some(st) => (st.graph.clone(), st.special.iter().copied().collect()),
        None => (g.clone(), s0.clone()),
    };
    let mut candidates: Vec<Vec<usize>> = rs.iter().map(|&(a, b)| vec![a, b]).take(1).collect();
    candidates.extend(cycle_stage(&rg, &rs, k));
    let mut best: Option<Vec<usize>> = None;
    let mut best_count = 0;
    for cand in candidates {
        let mut p = cand;
        for st in trace.iter().rev() {
            p = st.lift(&p);
        }
        if g.check_path(&p).is_err() {
            return Err(Error::Invalid(format!("lifted path {p:?} is not a path")));
        }
        let cnt = count_special(&s0, &p);
        if best.is_none() || cnt > best_count {
            best_count = cnt;
            best = Some(p);
        }
    }
    let path = best.unwrap_or_else(|| vec![0]);
    Ok(SpecialPath {
        path,
        special_count: best_count,
        guaranteed: bound_met(s0.len(), k),
        trace,
    })
}

/// Whether `count ≥ 2^{4k²}`.
fn bound_met(count: usize, k: usize) -> bool {
    let e = 4 * k * k;
    e < usize::BITS as usize && count >= 1usize << e
}

/// A path containing at least `k` special edges. Fails with `NotFound` when
/// the pipeline falls short below the bound `2^{4k²}`; never returns a path
/// with fewer than `k` special edges.
pub fn path_with_special_edges(inst: &SpecialEdgeInstance, k: usize) -> Result<SpecialPath> {
    let p = pipeline(inst, k)?;
    if p.special_count >= k {
        Ok(p)
    } else if p.guaranteed {
        Err(Error::Falsified(format!(
            "found {} < {k} special edges above the bound",
            p.special_count
        )))
    } else {
        Err(Error::NotFound(format!(
            "bound not met: best path has {} special edges, {k} requested",
            p.special_count
        )))
    }
}

/// Maximum number of special edges on any path, with a witness, by exhaustive search.
pub fn max_special_path_brute_force(g: &Graph, special: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let s: BTreeSet<(usize, usize)> = special.iter().map(|&(a, b)| edge_key(a, b)).collect();
    let n = g.vertex_count();
    let mut best = (0, vec![0]);
    let mut on = vec![false; n];
    fn dfs(
        g: &Graph,
        s: &BTreeSet<(usize, usize)>,
        path: &mut Vec<usize>,
        on: &mut [bool],
        count: usize,
        best: &mut (usize, Vec<usize>),
    ) {
        if count > best.0 {
            *best = (count, path.clone());
        }
        let here = *path.last().unwrap();
        for &w in g.neighbors(here) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                dfs(
                    g,
                    s,
                    path,
                    on,
                    count + usize::from(s.contains(&edge_key(here, w))),
                    best,
                );
                path.pop();
                on[w] = false;
            }
        }
    }
    for v in 0..n {
        on[v] = true;
        dfs(g, &s, &mut vec![v], &mut on, 0, &mut best);
        on[v] = false;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, prism};

    #[test]
    fn prism_all_special() {
        let g = prism();
        let inst = SpecialEdgeInstance::new(g.clone(), g.edges()).unwrap();
        let p = path_with_special_edges(&inst, 3).unwrap();
        assert!(p.special_count >= 3);
        assert_eq!(inst.count(&p.path), p.special_count);
    }

    #[test]
    fn cycle_hamiltonian_path() {
        let g = cycle(7);
        let inst = SpecialEdgeInstance::new(g.clone(), g.edges()).unwrap();
        let p = path_with_special_edges(&inst, 6).unwrap();
        assert_eq!(p.path.len(), 7);
    }

    #[test]
    fn single_special_edge() {
        let g = prism();
        let inst = SpecialEdgeInstance::new(g, vec![(0, 1)]).unwrap();
        let p = path_with_special_edges(&inst, 1).unwrap();
        assert_eq!(p.special_count, 1);
        assert!(path_with_special_edges(&inst, 2).is_err());
    }

    #[test]
    fn brute_force_on_cycle() {
        let g = cycle(5);
        assert_eq!(max_special_path_brute_force(&g, &[(0, 1), (2, 3)]).0, 2);
    }
}
