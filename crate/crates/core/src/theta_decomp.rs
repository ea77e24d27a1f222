//! Shortest θ-graphs between two vertices of a cubic graph, the structure
//! hanging off them, detectors for k-good witnesses and the bound arithmetic
//! behind the large-diameter argument.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::blocks::blocks_within;
use crate::connectivity::is_3_connected;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;
use crate::necklaces::{
    max_k_close_connectors, KClosePair, KGoodCertificate, KGoodWitness, NecklaceBlock, ThetaGraph,
    ThetaNecklace, WigglyNecklace,
};

/// Three internally disjoint `u`–`v` paths of minimum total length, by a
/// min-cost flow of value 3 with unit vertex capacities away from `u` and `v`.
pub fn shortest_theta(g: &Graph, u: usize, v: usize) -> Result<ThetaGraph> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Precondition("branch vertices must differ".into()));
    }
    let n = g.vertex_count();
    let mut net = FlowNetwork::new(2 * n);
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for x in 0..n {
        let cap = if x == u || x == v { 3 } else { 1 };
        let id = net.add_arc(2 * x, 2 * x + 1, cap, 0);
        out_arcs[2 * x].push(id);
        if x == v {
            continue;
        }
        for &y in g.neighbors(x) {
            if y != u {
                let id = net.add_arc(2 * x + 1, 2 * y, 1, 1);
                out_arcs[2 * x + 1].push(id);
            }
        }
    }
    let (flow, cost) = net.min_cost_flow(2 * u, 2 * v + 1, 3);
    if flow < 3 {
        return Err(Error::NoTheta(u, v));
    }
    let mut legs: Vec<Vec<usize>> = Vec::new();
    for &first in &out_arcs[2 * u + 1] {
        if net.flow(first) == 0 {
            continue;
        }
        let mut leg = vec![u];
        let mut node = net.arc_ends(first).1;
        loop {
            let x = node / 2;
            leg.push(x);
            if x == v {
                break;
            }
            let split = out_arcs[node][0];
            let out = out_arcs[net.arc_ends(split).1]
                .iter()
                .find(|&&id| net.flow(id) > 0)
                .ok_or_else(|| Error::Falsified("flow is not conserved".into()))?;
            node = net.arc_ends(*out).1;
        }
        legs.push(leg);
    }
    legs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let theta = ThetaGraph {
        u,
        v,
        legs: [legs[0].clone(), legs[1].clone(), legs[2].clone()],
    };
    if theta.total_length() as i64 != cost || !theta.violations(Some(g)).is_empty() {
        return Err(Error::Falsified(
            "flow decomposition disagrees with the optimum".into(),
        ));
    }
    Ok(theta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attachment {
    /// Attachments on at least two legs, not all on one.
    Connecting,
    /// Attachments all on one leg.
    Isolated,
    /// No attachments.
    Neither,
}

/// Subpath `legs[leg][start..=end]` of the θ-graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub leg: usize,
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn contains(&self, other: &Span) -> bool {
        self.leg == other.leg && self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// An endblock or component of `H = G − Θ⁺` with its attachments on Θ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub vertices: Vec<usize>,
    /// For an endblock: the block is 2-connected. For a component: every
    /// endblock of the component is 2-connected.
    pub two_connected: bool,
    /// Θ-neighbours of the piece together with its adjacent `F(Θ)` vertices, sorted.
    pub attachments: Vec<usize>,
    pub class: Attachment,
    /// Shortest leg subpath holding every attachment, for isolated pieces.
    pub span: Option<Span>,
}

/// A shortest θ-graph in a cubic 3-connected graph and what hangs off it.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaDecomposition {
    #[serde(skip)]
    pub graph: Graph,
    pub theta: ThetaGraph,
    /// Vertices off Θ with at least two Θ-neighbours.
    pub friends: Vec<usize>,
    /// Members of `friends` whose Θ-neighbours are not all on one leg.
    pub friendly: Vec<usize>,
    /// Θ together with `friends`, sorted.
    pub plus: Vec<usize>,
    /// Vertices of `H = G − Θ⁺`.
    pub rest: Vec<usize>,
    /// `(w, p)`: `w` in `H` adjacent to Θ⁺, `p` a nearest Θ vertex (lowest index on ties).
    pub projection: Vec<(usize, usize)>,
    pub endblocks: Vec<Piece>,
    pub components: Vec<Piece>,
}

/// Where a θ vertex sits: `(leg, position)` pairs, three for the branch vertices.
fn locate(theta: &ThetaGraph, n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut at = vec![Vec::new(); n];
    for (i, leg) in theta.legs.iter().enumerate() {
        for (p, &x) in leg.iter().enumerate() {
            at[x].push((i, p));
        }
    }
    at
}

impl ThetaDecomposition {
    fn classify(
        &self,
        vertices: &[usize],
        two_connected: bool,
        at: &[Vec<(usize, usize)>],
        friend: &[bool],
    ) -> Piece {
        let g = &self.graph;
        let mut attach = BTreeSet::new();
        for &x in vertices {
            for &y in g.neighbors(x) {
                if !at[y].is_empty() {
                    attach.insert(y);
                } else if friend[y] {
                    attach.extend(
                        g.neighbors(y)
                            .iter()
                            .copied()
                            .filter(|&z| !at[z].is_empty()),
                    );
                }
            }
        }
        let attachments: Vec<usize> = attach.into_iter().collect();
        let on_leg = |i: usize| {
            attachments
                .iter()
                .all(|&x| at[x].iter().any(|&(l, _)| l == i))
        };
        let home = (0..3).find(|&i| on_leg(i));
        let (class, span) = match home {
            _ if attachments.is_empty() => (Attachment::Neither, None),
            None => (Attachment::Connecting, None),
            Some(i) => {
                let pos = attachments
                    .iter()
                    .map(|&x| at[x].iter().find(|&&(l, _)| l == i).unwrap().1);
                let span = Span {
                    leg: i,
                    start: pos.clone().min().unwrap(),
                    end: pos.max().unwrap(),
                };
                (Attachment::Isolated, Some(span))
            }
        };
        Piece {
            vertices: vertices.to_vec(),
            two_connected,
            attachments,
            class,
            span,
        }
    }

    pub fn span_vertices(&self, span: &Span) -> &[usize] {
        &self.theta.legs[span.leg][span.start..=span.end]
    }

    /// Indices into `components` of the isolated components.
    pub fn isolated_components(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&c| self.components[c].class == Attachment::Isolated)
            .collect()
    }

    /// Checks the defining properties of every field against the host.
    pub fn violations(&self) -> Vec<String> {
        let g = &self.graph;
        let n = g.vertex_count();
        let mut out: Vec<String> = self.theta.violations(Some(g));
        let at = locate(&self.theta, n);
        let (u, v) = (self.theta.u, self.theta.v);
        let direct = usize::from(g.has_edge(u, v));
        for (i, leg) in self.theta.legs.iter().enumerate() {
            let (sub, _) = g.induced_subgraph(leg);
            if sub.edge_count() != leg.len() - 1 + if leg.len() > 2 { direct } else { 0 } {
                out.push(format!("leg {i} is not induced"));
            }
        }
        let theta_nbrs = |x: usize| {
            g.neighbors(x)
                .iter()
                .filter(|&&y| !at[y].is_empty())
                .count()
        };
        let theta_graph = Graph::from_edges(n, &self.theta.edges()).expect("θ edges are simple");
        let friends: Vec<usize> = (0..n)
            .filter(|&x| at[x].is_empty() && theta_nbrs(x) >= 2)
            .collect();
        if friends != self.friends {
            out.push("friends differ from the vertices with two Θ-neighbours".into());
        }
        for &w in &self.friends {
            let nb: Vec<usize> = g
                .neighbors(w)
                .iter()
                .copied()
                .filter(|&y| !at[y].is_empty())
                .collect();
            let one_leg = (0..3).any(|i| nb.iter().all(|&y| at[y].iter().any(|&(l, _)| l == i)));
            if one_leg == self.friendly.contains(&w) {
                out.push(format!("friendliness of {w} is wrong"));
            }
            if one_leg {
                for a in 0..nb.len() {
                    for b in a + 1..nb.len() {
                        if theta_graph.distance(nb[a], nb[b]).map_or(true, |d| d > 2) {
                            out.push(format!("Θ-neighbours of {w} are more than 2 apart on Θ"));
                        }
                    }
                }
            }
        }
        for &(w, p) in &self.projection {
            let dist = g.bfs_distances(w);
            let best = (0..n)
                .filter(|&x| !at[x].is_empty())
                .filter_map(|x| dist[x])
                .min();
            if dist[p] != best || at[p].is_empty() {
                out.push(format!("projection of {w} is not a nearest Θ vertex"));
            }
        }
        for piece in self.endblocks.iter().chain(&self.components) {
            if let Some(s) = piece.span {
                let vs = self.span_vertices(&s);
                if !piece.attachments.iter().all(|x| vs.contains(x))
                    || !piece.attachments.contains(&vs[0])
                    || !piece.attachments.contains(&vs[vs.len() - 1])
                {
                    out.push(format!(
                        "span of piece at {} is not the shortest cover",
                        piece.vertices[0]
                    ));
                }
            }
        }
        out
    }
}

/// Decomposes a cubic 3-connected `g` around a shortest `u`,`v`-θ-graph.
pub fn decompose(g: &Graph, u: usize, v: usize) -> Result<ThetaDecomposition> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !is_3_connected(g) {
        return Err(Error::Precondition("graph is not 3-connected".into()));
    }
    decompose_unchecked(g, u, v)
}

/// `decompose` without the cubic and 3-connectivity checks.
pub(crate) fn decompose_unchecked(g: &Graph, u: usize, v: usize) -> Result<ThetaDecomposition> {
    let theta = shortest_theta(g, u, v)?;
    let n = g.vertex_count();
    let at = locate(&theta, n);
    let on_theta = |x: usize| !at[x].is_empty();
    let theta_nbrs = |x: usize| -> Vec<usize> {
        g.neighbors(x)
            .iter()
            .copied()
            .filter(|&y| on_theta(y))
            .collect()
    };
    let friends: Vec<usize> = (0..n)
        .filter(|&x| !on_theta(x) && theta_nbrs(x).len() >= 2)
        .collect();
    let mut friend = vec![false; n];
    for &w in &friends {
        friend[w] = true;
    }
    let friendly: Vec<usize> = friends
        .iter()
        .copied()
        .filter(|&w| {
            let nb = theta_nbrs(w);
            !(0..3).any(|i| nb.iter().all(|&y| at[y].iter().any(|&(l, _)| l == i)))
        })
        .collect();
    let plus: Vec<usize> = (0..n).filter(|&x| on_theta(x) || friend[x]).collect();
    let in_rest: Vec<bool> = (0..n).map(|x| !on_theta(x) && !friend[x]).collect();
    let rest: Vec<usize> = (0..n).filter(|&x| in_rest[x]).collect();
    let mut projection = Vec::new();
    for &w in &rest {
        if g.neighbors(w).iter().any(|&y| !in_rest[y]) {
            let dist = g.bfs_distances(w);
            let p = (0..n)
                .filter(|&x| on_theta(x))
                .min_by_key(|&x| (dist[x].unwrap_or(usize::MAX), x))
                .expect("Θ is nonempty");
            projection.push((w, p));
        }
    }
    let mut d = ThetaDecomposition {
        graph: g.clone(),
        theta,
        friends,
        friendly,
        plus,
        rest,
        projection,
        endblocks: Vec::new(),
        components: Vec::new(),
    };
    let bd = blocks_within(g, Some(&in_rest));
    let mut endblocks = Vec::new();
    for b in bd.endblocks() {
        endblocks.push(d.classify(&bd.blocks[b], bd.is_two_connected(b), &at, &friend));
    }
    let mut components = Vec::new();
    for comp in g.components_within(Some(&in_rest)) {
        let all_two = bd
            .endblocks()
            .into_iter()
            .filter(|&b| comp.binary_search(&bd.blocks[b][0]).is_ok())
            .all(|b| bd.is_two_connected(b));
        components.push(d.classify(&comp, all_two, &at, &friend));
    }
    d.endblocks = endblocks;
    d.components = components;
    Ok(d)
}

/// Whether the attachment sets of two isolated components interleave on a common leg:
/// some `x2` lies on `x1 P y1` and `y1` on `x2 P y2`.
pub fn crossing(d: &ThetaDecomposition, a: usize, b: usize) -> bool {
    let (pa, pb) = (&d.components[a], &d.components[b]);
    let (Some(sa), Some(sb)) = (pa.span, pb.span) else {
        return false;
    };
    if sa.leg != sb.leg {
        return false;
    }
    let leg = &d.theta.legs[sa.leg];
    let pos = |x: usize| leg.iter().position(|&y| y == x).unwrap();
    let na: Vec<usize> = pa.attachments.iter().map(|&x| pos(x)).collect();
    let nb: Vec<usize> = pb.attachments.iter().map(|&x| pos(x)).collect();
    let between = |z: usize, p: usize, q: usize| p.min(q) <= z && z <= p.max(q);
    for &x1 in &na {
        for &y1 in &na {
            for &x2 in &nb {
                for &y2 in &nb {
                    if between(x2, x1, y1) && between(y1, x2, y2) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// `a <_Θ b`: the span of `a` lies in the span of `b` and avoids the attachments of `b`.
pub fn precedes(d: &ThetaDecomposition, a: usize, b: usize) -> bool {
    let (pa, pb) = (&d.components[a], &d.components[b]);
    let (Some(sa), Some(sb)) = (pa.span, pb.span) else {
        return false;
    };
    a != b
        && sb.contains(&sa)
        && d.span_vertices(&sa)
            .iter()
            .all(|x| pb.attachments.binary_search(x).is_err())
}

/// Components of `H` in increasing `<_Θ` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaChain {
    /// Indices into `ThetaDecomposition::components`.
    pub components: Vec<usize>,
    /// Every member has only 2-connected endblocks.
    pub special: bool,
}

/// Longest chain ending at each element of `pool`, by dynamic programming over span length.
fn longest_chains(d: &ThetaDecomposition, pool: &[usize]) -> Vec<Vec<usize>> {
    let mut order = pool.to_vec();
    order.sort_by_key(|&c| (d.components[c].span.map_or(0, |s| s.len()), c));
    let mut best: Vec<(usize, Option<usize>)> = vec![(1, None); order.len()];
    for j in 0..order.len() {
        for i in 0..j {
            if precedes(d, order[i], order[j]) && best[i].0 + 1 > best[j].0 {
                best[j] = (best[i].0 + 1, Some(i));
            }
        }
    }
    (0..order.len())
        .map(|j| {
            let mut chain = vec![order[j]];
            let mut at = best[j].1;
            while let Some(i) = at {
                chain.push(order[i]);
                at = best[i].1;
            }
            chain.reverse();
            chain
        })
        .collect()
}

/// One longest chain below each `<_Θ`-maximal isolated component, longest first.
pub fn chains(d: &ThetaDecomposition) -> Vec<ThetaChain> {
    let pool = d.isolated_components();
    let tops: BTreeSet<usize> = pool
        .iter()
        .copied()
        .filter(|&b| !pool.iter().any(|&c| precedes(d, b, c)))
        .collect();
    let mut out: Vec<ThetaChain> = longest_chains(d, &pool)
        .into_iter()
        .filter(|c| tops.contains(c.last().unwrap()))
        .map(|c| {
            let special = c.iter().all(|&x| d.components[x].two_connected);
            ThetaChain {
                components: c,
                special,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.components
            .len()
            .cmp(&a.components.len())
            .then_with(|| a.components.cmp(&b.components))
    });
    out
}

/// Longest chain made only of components whose endblocks are all 2-connected.
pub fn longest_special_chain(d: &ThetaDecomposition) -> Vec<usize> {
    let pool: Vec<usize> = d
        .isolated_components()
        .into_iter()
        .filter(|&c| d.components[c].two_connected)
        .collect();
    longest_chains(d, &pool)
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .unwrap_or_default()
}

/// `⌈3k/2⌉`
fn three_halves(k: usize) -> usize {
    (3 * k).div_ceil(2)
}

/// Counts behind the five detector conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DetectorCounts {
    /// Edges off Θ with both ends on Θ.
    pub chords: usize,
    pub friendly: usize,
    /// Isolated vertices of `G − Θ`.
    pub isolated_vertices: usize,
    /// Isolated edges of `G − Θ`.
    pub isolated_edges: usize,
    /// Θ edges lying in a triangle.
    pub triangle_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectorReport {
    pub counts: DetectorCounts,
    /// Conditions `a`–`e` whose threshold is met.
    pub met: Vec<char>,
    /// Condition whose construction produced the certificate.
    pub fired: Option<char>,
    pub certificate: Option<KGoodCertificate>,
}

struct Frame<'a> {
    g: &'a Graph,
    theta: &'a ThetaGraph,
    at: Vec<Vec<(usize, usize)>>,
}

impl<'a> Frame<'a> {
    fn new(d: &'a ThetaDecomposition) -> Self {
        Frame {
            g: &d.graph,
            theta: &d.theta,
            at: locate(&d.theta, d.graph.vertex_count()),
        }
    }

    fn on_theta(&self, x: usize) -> bool {
        !self.at[x].is_empty()
    }

    fn theta_nbrs(&self, x: usize) -> Vec<usize> {
        self.g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.on_theta(y))
            .collect()
    }

    /// Leg whose interior holds `x`.
    fn interior_leg(&self, x: usize) -> Option<usize> {
        match self.at[x].as_slice() {
            [(l, _)] => Some(*l),
            _ => None,
        }
    }

    /// Leg holding all of `xs`, lowest index first.
    fn common_leg(&self, xs: &[usize]) -> Option<usize> {
        (0..3).find(|&i| xs.iter().all(|&x| self.at[x].iter().any(|&(l, _)| l == i)))
    }

    fn position(&self, leg: usize, x: usize) -> usize {
        self.at[x].iter().find(|&&(l, _)| l == leg).unwrap().1
    }

    /// The cycle formed by legs `i` and `j`: leg `i` forward, leg `j` backward.
    fn cycle(&self, i: usize, j: usize) -> Vec<usize> {
        let mut c = self.theta.legs[i].clone();
        c.extend(self.theta.interior(j).iter().rev());
        c
    }

    /// Leg interior against the cycle of the other two legs.
    fn leg_against_cycle(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        (
            self.theta.interior(i).to_vec(),
            self.cycle(others[0], others[1]),
        )
    }

    fn finish(&self, witness: KGoodWitness) -> Option<KGoodWitness> {
        witness.validate(Some(self.g)).valid.then_some(witness)
    }

    fn close_pair(&self, leg: usize, connectors: Vec<Vec<usize>>) -> Option<KGoodWitness> {
        if connectors.is_empty() {
            return None;
        }
        let (path, cycle) = self.leg_against_cycle(leg);
        self.finish(KGoodWitness::KClose(KClosePair {
            path,
            cycle,
            connectors,
        }))
    }

    fn chord_edges(&self) -> Vec<(usize, usize)> {
        let edges: BTreeSet<(usize, usize)> = self.theta.edges().into_iter().collect();
        self.g
            .edges()
            .into_iter()
            .filter(|&(a, b)| self.on_theta(a) && self.on_theta(b) && !edges.contains(&(a, b)))
            .collect()
    }

    /// Chords at the interior of the leg that sees most of them.
    fn chords(&self) -> Option<KGoodWitness> {
        let chords = self.chord_edges();
        let per_leg = |i: usize| -> Vec<Vec<usize>> {
            chords
                .iter()
                .filter_map(|&(a, b)| {
                    let (la, lb) = (self.interior_leg(a), self.interior_leg(b));
                    if la == Some(i) && lb != Some(i) {
                        Some(vec![a, b])
                    } else if lb == Some(i) && la != Some(i) {
                        Some(vec![b, a])
                    } else {
                        None
                    }
                })
                .collect()
        };
        let leg = (0..3).max_by_key(|&i| (per_leg(i).len(), std::cmp::Reverse(i)))?;
        self.close_pair(leg, per_leg(leg))
    }

    /// Friendly vertices as length-2 connectors from one leg interior to the other two legs.
    fn friendly(&self, friendly: &[usize]) -> Option<KGoodWitness> {
        let per_leg = |i: usize| -> Vec<Vec<usize>> {
            friendly
                .iter()
                .filter_map(|&w| {
                    let nb = self.theta_nbrs(w);
                    let a = nb
                        .iter()
                        .copied()
                        .find(|&x| self.interior_leg(x) == Some(i))?;
                    let b = nb
                        .iter()
                        .copied()
                        .find(|&x| self.interior_leg(x) != Some(i))?;
                    Some(vec![a, w, b])
                })
                .collect()
        };
        let leg = (0..3).max_by_key(|&i| (per_leg(i).len(), std::cmp::Reverse(i)))?;
        self.close_pair(leg, per_leg(leg))
    }

    fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.g.vertex_count())
            .filter(|&x| !self.on_theta(x) && self.g.neighbors(x).iter().all(|&y| self.on_theta(y)))
            .collect()
    }

    fn isolated_edges(&self) -> Vec<(usize, usize)> {
        let off = |x: usize| {
            self.g
                .neighbors(x)
                .iter()
                .filter(|&&y| !self.on_theta(y))
                .count()
        };
        self.g
            .edges()
            .into_iter()
            .filter(|&(a, b)| !self.on_theta(a) && !self.on_theta(b) && off(a) == 1 && off(b) == 1)
            .collect()
    }

    fn triangle_edges(&self) -> Vec<(usize, usize, usize)> {
        self.theta
            .edges()
            .into_iter()
            .filter_map(|(a, b)| {
                let w = self
                    .g
                    .neighbors(a)
                    .iter()
                    .copied()
                    .find(|&w| self.g.has_edge(w, b))?;
                Some((a, b, w))
            })
            .collect()
    }

    /// Isolated vertices of `G − Θ` whose three neighbours are consecutive on a leg,
    /// each giving a θ-graph with a third leg of length 1 on the cycle of two legs.
    fn isolated_thetas(&self) -> Option<KGoodWitness> {
        let singles: Vec<(usize, usize)> = self
            .isolated_vertices()
            .into_iter()
            .filter_map(|w| Some((w, self.common_leg(&self.theta_nbrs(w))?)))
            .collect();
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let (i, j) = pairs.into_iter().max_by_key(|&(i, j)| {
            (
                singles.iter().filter(|s| s.1 == i || s.1 == j).count(),
                std::cmp::Reverse((i, j)),
            )
        })?;
        let cycle = self.cycle(i, j);
        let len = cycle.len();
        let pos: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(p, &x)| (x, p)).collect();
        let mut found: Vec<(usize, usize)> = Vec::new();
        for &(w, _) in singles.iter().filter(|s| s.1 == i || s.1 == j) {
            let mut ps: Vec<usize> = self.theta_nbrs(w).iter().map(|x| pos[x]).collect();
            ps.sort_unstable();
            if ps.len() == 3 && ps[1] == ps[0] + 1 && ps[2] == ps[1] + 1 {
                found.push((ps[0], w));
            }
        }
        found.sort_unstable();
        if found.is_empty() {
            return None;
        }
        let t = found.len();
        let thetas: Vec<ThetaGraph> = found
            .iter()
            .map(|&(p, w)| {
                let (a, b, c) = (cycle[p], cycle[p + 1], cycle[p + 2]);
                ThetaGraph {
                    u: b,
                    v: w,
                    legs: [vec![b, a, w], vec![b, c, w], vec![b, w]],
                }
            })
            .collect();
        let connectors: Vec<Vec<usize>> = (0..t)
            .map(|s| {
                let from = found[s].0 + 2;
                let to = found[(s + 1) % t].0;
                let steps = (to + len - from) % len;
                (0..=steps).map(|q| cycle[(from + q) % len]).collect()
            })
            .collect();
        self.finish(KGoodWitness::Theta(ThetaNecklace {
            i: 1,
            thetas,
            connectors,
        }))
    }

    /// Path through one leg interior detouring through isolated-edge ends
    /// seeing only that leg; partners reach the other two legs.
    fn isolated_edge_path(&self) -> Option<KGoodWitness> {
        let colour = |y: usize| -> Option<usize> {
            let nb = self.theta_nbrs(y);
            (nb.len() == 2).then(|| self.common_leg(&nb)).flatten()
        };
        let mut by_leg: [Vec<(usize, usize)>; 3] = Default::default();
        for (a, b) in self.isolated_edges() {
            for (y, z) in [(a, b), (b, a)] {
                if let (Some(cy), Some(cz)) = (colour(y), colour(z)) {
                    if cy != cz {
                        by_leg[cy].push((y, z));
                    }
                }
            }
        }
        let leg = (0..3).max_by_key(|&i| (by_leg[i].len(), std::cmp::Reverse(i)))?;
        let line = &self.theta.legs[leg];
        let mut ears: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &(y, _) in &by_leg[leg] {
            let mut ps: Vec<usize> = self
                .theta_nbrs(y)
                .iter()
                .map(|&x| self.position(leg, x))
                .collect();
            ps.sort_unstable();
            if ps[1] - ps[0] <= 2 {
                ears.insert(ps[0], (ps[1], y));
            }
        }
        let (mut path, mut used) = (Vec::new(), BTreeSet::new());
        let mut p = 1;
        while p + 1 < line.len() {
            match ears.get(&p).copied() {
                Some((q, y)) if q == p + 1 => {
                    path.extend([line[p], y]);
                    used.insert(y);
                    p = q;
                }
                Some((q, y)) => match ears.get(&(p + 1)).copied() {
                    Some((q2, y2)) if q2 == p + 3 => {
                        path.extend([line[p], y, line[q], line[p + 1], y2]);
                        used.extend([y, y2]);
                        p = q2;
                    }
                    _ => {
                        path.extend([line[p], y]);
                        used.insert(y);
                        p = q;
                    }
                },
                None => {
                    path.push(line[p]);
                    p += 1;
                }
            }
        }
        let connectors: Vec<Vec<usize>> = by_leg[leg]
            .iter()
            .filter(|(y, _)| used.contains(y))
            .map(|&(y, z)| vec![y, z, *self.theta_nbrs(z).iter().min().unwrap()])
            .collect();
        if connectors.is_empty() {
            return None;
        }
        let (_, cycle) = self.leg_against_cycle(leg);
        self.finish(KGoodWitness::KClose(KClosePair {
            path,
            cycle,
            connectors,
        }))
    }

    /// Disjoint triangles on the cycle of two legs as wiggly blocks.
    fn triangles(&self) -> Option<KGoodWitness> {
        let tri: Vec<(usize, usize, usize)> = self
            .triangle_edges()
            .into_iter()
            .filter(|&(_, _, w)| !self.on_theta(w))
            .collect();
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let on_pair = |(a, b, _): &(usize, usize, usize), (i, j): (usize, usize)| {
            [a, b]
                .iter()
                .all(|&&x| self.at[x].iter().any(|&(l, _)| l == i || l == j))
        };
        let (i, j) = pairs.into_iter().max_by_key(|&pr| {
            (
                tri.iter().filter(|t| on_pair(t, pr)).count(),
                std::cmp::Reverse(pr),
            )
        })?;
        let cycle = self.cycle(i, j);
        let len = cycle.len();
        let pos: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(p, &x)| (x, p)).collect();
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for &(a, b, w) in tri.iter().filter(|t| on_pair(t, (i, j))) {
            let (pa, pb) = (pos[&a], pos[&b]);
            if (pa + 1) % len == pb {
                cands.push((pa, w));
            } else if (pb + 1) % len == pa {
                cands.push((pb, w));
            }
        }
        cands.sort_unstable();
        let mut taken = BTreeSet::new();
        let mut chosen = Vec::new();
        for (p, w) in cands {
            let vs = [cycle[p], cycle[(p + 1) % len], w];
            if vs.iter().all(|x| !taken.contains(x)) {
                taken.extend(vs);
                chosen.push((p, w));
            }
        }
        if chosen.is_empty() {
            return None;
        }
        let t = chosen.len();
        let blocks: Vec<NecklaceBlock> = chosen
            .iter()
            .map(|&(p, w)| {
                let (x, y) = (cycle[p], cycle[(p + 1) % len]);
                NecklaceBlock {
                    edges: vec![(x, y), (x, w), (w, y)],
                    x,
                    y,
                    wiggle: Some([vec![x, y], vec![x, w, y]]),
                }
            })
            .collect();
        let connectors: Vec<Vec<usize>> = (0..t)
            .map(|s| {
                let from = (chosen[s].0 + 1) % len;
                let to = chosen[(s + 1) % t].0;
                let steps = (to + len - from) % len;
                (0..=steps).map(|q| cycle[(from + q) % len]).collect()
            })
            .collect();
        self.finish(KGoodWitness::Wiggly(WigglyNecklace { blocks, connectors }))
    }

    fn counts(&self, friendly: usize) -> DetectorCounts {
        DetectorCounts {
            chords: self.chord_edges().len(),
            friendly,
            isolated_vertices: self.isolated_vertices().len(),
            isolated_edges: self.isolated_edges().len(),
            triangle_edges: self.triangle_edges().len(),
        }
    }

    fn construct(&self, condition: char, friendly: &[usize]) -> Option<KGoodWitness> {
        match condition {
            'a' => self.chords(),
            'b' => self.friendly(friendly),
            'c' => self.isolated_thetas(),
            'd' => self.isolated_edge_path(),
            _ => self.triangles(),
        }
    }
}

/// Checks the five counting conditions at their thresholds for `k` and, for the
/// first one met whose construction reaches level `k`, returns the validated certificate.
pub fn lemma53_detect(d: &ThetaDecomposition, k: usize) -> DetectorReport {
    let frame = Frame::new(d);
    let counts = frame.counts(d.friendly.len());
    let needs = [
        ('a', counts.chords, three_halves(k)),
        ('b', counts.friendly, three_halves(k)),
        ('c', counts.isolated_vertices, 3 * k),
        ('d', counts.isolated_edges, 3 * k),
        ('e', counts.triangle_edges, three_halves(k)),
    ];
    let met: Vec<char> = needs
        .iter()
        .filter(|n| k > 0 && n.1 >= n.2)
        .map(|n| n.0)
        .collect();
    for &c in &met {
        if let Some(w) = frame.construct(c, &d.friendly) {
            if w.level() >= k {
                return DetectorReport {
                    counts,
                    met,
                    fired: Some(c),
                    certificate: Some(KGoodCertificate { k, witness: w }),
                };
            }
        }
    }
    DetectorReport {
        counts,
        met,
        fired: None,
        certificate: None,
    }
}

/// Threshold comparison for one census quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseCheck {
    pub quantity: String,
    pub count: usize,
    #[serde(serialize_with = "decimal")]
    pub threshold: BigUint,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Vertices of `H` with at most one neighbour in `H`.
    pub low_degree: usize,
    /// 2-connected endblocks of `H` by class.
    pub connecting_endblocks: usize,
    pub isolated_endblocks: usize,
    pub special_chain: Vec<usize>,
    pub cases: Vec<CaseCheck>,
}

/// Structure counts of a decomposition and which large-diameter case each would trigger for `k`.
pub fn census(d: &ThetaDecomposition, k: usize) -> Census {
    let g = &d.graph;
    let mut in_rest = vec![false; g.vertex_count()];
    for &x in &d.rest {
        in_rest[x] = true;
    }
    let low_degree = d
        .rest
        .iter()
        .filter(|&&x| g.neighbors(x).iter().filter(|&&y| in_rest[y]).count() <= 1)
        .count();
    let count = |class: Attachment| {
        d.endblocks
            .iter()
            .filter(|b| b.two_connected && b.class == class)
            .count()
    };
    let connecting_endblocks = count(Attachment::Connecting);
    let isolated_endblocks = count(Attachment::Isolated);
    let special_chain = longest_special_chain(d);
    let b = bounds(k.max(1));
    let mut cases = Vec::new();
    for (quantity, count, threshold) in [
        (
            "vertices of degree at most 1 in H",
            low_degree,
            b.low_degree,
        ),
        ("connecting endblocks", connecting_endblocks, b.connecting),
        ("isolated endblocks", isolated_endblocks, b.isolated),
        ("special chain length", special_chain.len(), b.chain),
    ] {
        let met = BigUint::from(count) >= threshold;
        cases.push(CaseCheck {
            quantity: quantity.into(),
            count,
            threshold,
            met,
        });
    }
    Census {
        low_degree,
        connecting_endblocks,
        isolated_endblocks,
        special_chain,
        cases,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub u: usize,
    pub v: usize,
    pub theta: ThetaGraph,
    pub detectors: DetectorReport,
    pub certificate: Option<KGoodCertificate>,
    /// Which search produced the certificate.
    pub source: Option<String>,
    pub census: Census,
}

/// Best-effort search for a `k`-good witness in a cubic 3-connected graph.
///
/// Branch vertices are the lexicographically first pair at maximum distance.
/// After the threshold detectors, each leg interior is matched against the
/// cycle of the other two legs by flow, and the detector constructions are
/// retried without their thresholds. Every certificate returned is validated.
pub fn kgood_search(g: &Graph, k: usize) -> Result<SearchOutcome> {
    if !g.is_cubic() || !is_3_connected(g) {
        return Err(Error::Precondition(
            "graph must be cubic and 3-connected".into(),
        ));
    }
    let n = g.vertex_count();
    let mut pair = (0, 1, 0);
    for a in 0..n {
        let dist = g.bfs_distances(a);
        for b in a + 1..n {
            let d = dist[b].ok_or(Error::Disconnected)?;
            if d > pair.2 {
                pair = (a, b, d);
            }
        }
    }
    let (u, v, _) = pair;
    let d = decompose(g, u, v)?;
    let detectors = lemma53_detect(&d, k);
    let census = census(&d, k);
    let mut found: Option<(KGoodWitness, String)> = detectors
        .certificate
        .clone()
        .map(|c| (c.witness, format!("condition {}", detectors.fired.unwrap())));
    if found.is_none() && k > 0 {
        let frame = Frame::new(&d);
        for leg in 0..3 {
            let (path, cycle) = frame.leg_against_cycle(leg);
            if path.is_empty() {
                continue;
            }
            let connectors = max_k_close_connectors(g, &path, &cycle)?;
            if connectors.len() >= k {
                if let Some(w) = frame.close_pair(leg, connectors) {
                    found = Some((w, format!("leg {leg} against the opposite cycle")));
                    break;
                }
            }
        }
        if found.is_none() {
            for (c, name) in [
                ('e', "triangle scan"),
                ('c', "θ-necklace scan"),
                ('d', "isolated-edge scan"),
            ] {
                if let Some(w) = frame.construct(c, &d.friendly) {
                    if w.level() >= k {
                        found = Some((w, name.into()));
                        break;
                    }
                }
            }
        }
    }
    let certificate = found.as_ref().map(|(w, _)| KGoodCertificate {
        k,
        witness: w.clone(),
    });
    if let Some(c) = &certificate {
        let r = c.validate(Some(g));
        if !r.valid {
            return Err(Error::Falsified(r.violations.join("; ")));
        }
    }
    Ok(SearchOutcome {
        u,
        v,
        theta: d.theta.clone(),
        detectors,
        certificate,
        source: found.map(|f| f.1),
        census,
    })
}

fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// One inequality of the bound chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub statement: String,
    pub holds: bool,
}

/// Exact thresholds for a given `k`. `f(k) = 2^{10⁶k¹⁶}` is kept as its exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub k: usize,
    /// 18k²: connectors that yield a θ(k, i)-necklace.
    #[serde(serialize_with = "decimal")]
    pub kclose_to_necklace: BigUint,
    /// 3k⁴: θ-graphs needed for every residue.
    #[serde(serialize_with = "decimal")]
    pub theta_necklace: BigUint,
    /// 2k: wiggly blocks needed for every residue.
    #[serde(serialize_with = "decimal")]
    pub wiggly: BigUint,
    /// 162k⁸: connectors needed for every residue.
    #[serde(serialize_with = "decimal")]
    pub kclose: BigUint,
    /// 2^{4k²}: special edges forcing a path with k of them.
    #[serde(serialize_with = "decimal")]
    pub special_edges: BigUint,
    /// 8k
    #[serde(serialize_with = "decimal")]
    pub low_degree: BigUint,
    /// 21k² + ⌈3k/2⌉
    #[serde(serialize_with = "decimal")]
    pub connecting: BigUint,
    /// 5700k⁶
    #[serde(serialize_with = "decimal")]
    pub isolated: BigUint,
    /// 5k
    #[serde(serialize_with = "decimal")]
    pub chain: BigUint,
    /// 10⁹k¹³·2^{9k²}: diameter forcing k-goodness.
    #[serde(serialize_with = "decimal")]
    pub diameter: BigUint,
    /// 10⁶k¹⁶, the base-2 logarithm of f(k).
    #[serde(serialize_with = "decimal")]
    pub f_exponent: BigUint,
    pub checks: Vec<BoundCheck>,
}

impl BoundsTable {
    pub fn chain_holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `2^a > b`, decided exactly from the bit length of `b`.
fn pow2_exceeds(a: &BigUint, b: &BigUint) -> bool {
    *a >= BigUint::from(b.bits())
}

pub fn bounds(k: usize) -> BoundsTable {
    let big = |x: u64| BigUint::from(x);
    let kk = BigUint::from(k);
    let pow = |x: &BigUint, e: u32| x.pow(e);
    let two = big(2);
    let k2 = pow(&kk, 2);
    let close_level = big(162) * pow(&kk, 8);
    let f_exponent = big(1_000_000) * pow(&kk, 16);
    let half = big(500_000) * pow(&kk, 16);
    let tenth = big(50_000) * pow(&kk, 16);
    let target = big(1_000_000_000) * pow(&close_level, 13);
    let squared_exponent = big(9) * pow(&close_level, 2);
    let e = |x: &BigUint| u32::try_from(x).expect("exponent fits in u32");
    let mut checks = vec![
        BoundCheck {
            statement: "2^{½·10⁶k¹⁶} > (½·10⁵k¹⁶)^{10}".into(),
            holds: pow2_exceeds(&half, &pow(&tenth, 10)),
        },
        BoundCheck {
            statement: "(½·10⁵k¹⁶)^{10} > 10⁴⁶k¹⁶⁰".into(),
            holds: pow(&tenth, 10) > pow(&big(10), 46) * pow(&kk, 160),
        },
        BoundCheck {
            statement: "10⁴⁶k¹⁶⁰ > 10⁹(162k⁸)¹³".into(),
            holds: pow(&big(10), 46) * pow(&kk, 160) > target,
        },
        BoundCheck {
            statement: "2^{½·10⁶k¹⁶} > 10⁹(162k⁸)¹³".into(),
            holds: pow2_exceeds(&half, &target),
        },
        BoundCheck {
            statement: "½·10⁶k¹⁶ > 9(162k⁸)²".into(),
            holds: half > squared_exponent,
        },
    ];
    let whole = if f_exponent >= squared_exponent {
        pow2_exceeds(&(&f_exponent - &squared_exponent), &target)
    } else {
        false
    };
    checks.push(BoundCheck {
        statement: "f(k) > 10⁹(162k⁸)¹³·2^{9(162k⁸)²}".into(),
        holds: whole,
    });
    BoundsTable {
        k,
        kclose_to_necklace: big(18) * &k2,
        theta_necklace: big(3) * pow(&kk, 4),
        wiggly: big(2) * &kk,
        kclose: close_level,
        special_edges: pow(&two, e(&(big(4) * &k2))),
        low_degree: big(8) * &kk,
        connecting: big(21) * &k2 + big(three_halves(k) as u64),
        isolated: big(5700) * pow(&kk, 6),
        chain: big(5) * &kk,
        diameter: big(1_000_000_000) * pow(&kk, 13) * pow(&two, e(&(big(9) * &k2))),
        f_exponent,
        checks,
    }
}

/// A cubic host built around three legs of equal length `length` between
/// `u = 0` and `v = 1`. Every interior leg vertex receives exactly one more
/// edge from the listed attachments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaHost {
    pub length: usize,
    /// Ladder gadgets, each joined to three `(leg, position)` ports. The
    /// first two ports meet adjacent gadget vertices and must be at most two
    /// apart; the ladder is long enough that no route through it beats the legs.
    pub gadgets: Vec<[(usize, usize); 3]>,
    /// Edges `(leg a, leg b, position)` between equal positions.
    pub rungs: Vec<(usize, usize, usize)>,
    /// `(leg a, leg b, position)`: a triangle on edge `position, position + 1`
    /// of each leg, the two apexes joined.
    pub triangle_pairs: Vec<(usize, usize, usize)>,
    /// 4-cycles `a₁b₁b₂a₂` joined to four ports in the order `a₁, b₁, a₂, b₂`.
    pub squares: Vec<[(usize, usize); 4]>,
}

impl ThetaHost {
    /// Vertex at `position` of `leg`.
    pub fn vertex(&self, leg: usize, position: usize) -> usize {
        match position {
            0 => 0,
            p if p == self.length => 1,
            p => 2 + leg * (self.length - 1) + p - 1,
        }
    }

    /// The host graph. Fails unless the three legs are its shortest `0`,`1`-θ-graph.
    pub fn build(&self) -> Result<Graph> {
        let l = self.length;
        if l < 2 {
            return Err(Error::Precondition("legs need length at least 2".into()));
        }
        let mut edges = Vec::new();
        for leg in 0..3 {
            for p in 0..l {
                edges.push((self.vertex(leg, p), self.vertex(leg, p + 1)));
            }
        }
        let mut next = 2 + 3 * (l - 1);
        let mut fresh = || {
            next += 1;
            next - 1
        };
        let port = |(leg, p): (usize, usize)| -> Result<usize> {
            if leg < 3 && 0 < p && p < l {
                Ok(self.vertex(leg, p))
            } else {
                Err(Error::Precondition(format!(
                    "({leg}, {p}) is not an interior leg position"
                )))
            }
        };
        for &(a, b, p) in &self.rungs {
            if a == b {
                return Err(Error::Precondition(
                    "a rung joins two different legs".into(),
                ));
            }
            edges.push((port((a, p))?, port((b, p))?));
        }
        for &(a, b, p) in &self.triangle_pairs {
            let mut apex = [0; 2];
            for (s, leg) in [a, b].into_iter().enumerate() {
                let (x, y) = (port((leg, p))?, port((leg, p + 1))?);
                apex[s] = fresh();
                edges.extend([(x, apex[s]), (y, apex[s])]);
            }
            edges.push((apex[0], apex[1]));
        }
        for ports in &self.gadgets {
            let [p, q, r] = ports.map(|(_, pos)| pos);
            if p.abs_diff(q) > 2 {
                return Err(Error::Precondition(
                    "paired gadget ports must be at most two apart".into(),
                ));
            }
            let m = [p.abs_diff(r), q.abs_diff(r), 1].into_iter().max().unwrap();
            let a: Vec<usize> = (0..m).map(|_| fresh()).collect();
            let b: Vec<usize> = (0..m).map(|_| fresh()).collect();
            let c = fresh();
            for i in 0..m {
                edges.push((a[i], b[i]));
                if i + 1 < m {
                    edges.extend([(a[i], a[i + 1]), (b[i], b[i + 1])]);
                }
            }
            edges.extend([(c, a[0]), (c, b[0])]);
            edges.extend([
                (port(ports[0])?, a[m - 1]),
                (port(ports[1])?, b[m - 1]),
                (port(ports[2])?, c),
            ]);
        }
        for ports in &self.squares {
            let q: Vec<usize> = (0..4).map(|_| fresh()).collect();
            edges.extend([(q[0], q[1]), (q[1], q[3]), (q[3], q[2]), (q[2], q[0])]);
            for (i, &pt) in ports.iter().enumerate() {
                edges.push((port(pt)?, q[i]));
            }
        }
        let g = Graph::from_edges(next, &edges)?;
        if !g.is_cubic() {
            return Err(Error::Precondition(
                "attachments do not cover every interior leg vertex exactly once".into(),
            ));
        }
        let legs: Vec<Vec<usize>> = (0..3)
            .map(|i| (0..=l).map(|p| self.vertex(i, p)).collect())
            .collect();
        let theta = shortest_theta(&g, 0, 1)?;
        if theta.legs.iter().any(|leg| !legs.contains(leg)) {
            return Err(Error::Precondition(
                "attachments create a θ-graph at least as short as the legs".into(),
            ));
        }
        Ok(g)
    }
}
