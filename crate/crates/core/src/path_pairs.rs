//! Pairs of x–y paths whose lengths differ by 1 or 2, non-separating induced
//! cycles, and disjoint path pairs joined by many edges.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::{disjoint_paths, is_2_connected, is_3_connected};
use crate::error::{Error, Result};
use crate::frontier::FrontierRun;
use crate::generators::{random_2_connected_cubic, subdivide};
use crate::graph::Graph;

/// Two `x`–`y` paths, shorter first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPair {
    pub short: Vec<usize>,
    pub long: Vec<usize>,
    pub difference: usize,
}

impl PathPair {
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        g.check_path(&self.short)?;
        g.check_path(&self.long)?;
        if self.short.first() != self.long.first() || self.short.last() != self.long.last() {
            return Err("paths have different ends".into());
        }
        let d = self.long.len() as i64 - self.short.len() as i64;
        if d != self.difference as i64 || !(1..=2).contains(&d) {
            return Err(format!(
                "length difference {d} (recorded {})",
                self.difference
            ));
        }
        Ok(())
    }
}

/// A cycle with two marked vertices and the lengths of the two arcs between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSplit {
    pub cycle: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub arcs: [usize; 2],
}

impl ArcSplit {
    pub fn difference(&self) -> usize {
        self.arcs[0].abs_diff(self.arcs[1])
    }
}

pub fn arc_split(cycle: &[usize], x: usize, y: usize) -> Result<ArcSplit> {
    let pos = |v: usize| {
        cycle
            .iter()
            .position(|&w| w == v)
            .ok_or_else(|| Error::Precondition(format!("vertex {v} is not on the cycle")))
    };
    let (px, py) = (pos(x)?, pos(y)?);
    if px == py {
        return Err(Error::Precondition("marked vertices must differ".into()));
    }
    let a = (py + cycle.len() - px) % cycle.len();
    Ok(ArcSplit {
        cycle: cycle.to_vec(),
        x,
        y,
        arcs: [a, cycle.len() - a],
    })
}

/// Absolute difference of the two `x`–`y` arc lengths on `cycle`.
pub fn arc_difference(cycle: &[usize], x: usize, y: usize) -> Result<usize> {
    arc_split(cycle, x, y).map(|s| s.difference())
}

/// Exact set of `x`–`y` path lengths with witnesses, by the frontier cycle DP
/// on `g` plus a fresh `x`–`y` path of `max(n, 2)` edges: every cycle longer
/// than `n` uses the fresh path exactly once.
pub struct XyPathLengths {
    run: FrontierRun,
    n: usize,
    extra: usize,
    x: usize,
    y: usize,
}

impl XyPathLengths {
    pub fn new(g: &Graph, x: usize, y: usize) -> Result<Self> {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        if x == y {
            return Err(Error::Precondition("endpoints must differ".into()));
        }
        let n = g.vertex_count();
        let extra = n.max(2);
        let mut h = g.clone();
        let mut prev = x;
        for _ in 1..extra {
            let w = h.add_vertex();
            h.add_edge(prev, w)?;
            prev = w;
        }
        h.add_edge(prev, y)?;
        Ok(XyPathLengths {
            run: FrontierRun::new(&h, true),
            n,
            extra,
            x,
            y,
        })
    }

    pub fn lengths(&self) -> BTreeSet<usize> {
        self.run
            .lengths()
            .into_iter()
            .filter(|&l| l > self.n)
            .map(|l| l - self.extra)
            .collect()
    }

    pub fn witness(&self, len: usize) -> Option<Vec<usize>> {
        let cyc = self.run.witness(len + self.extra)?;
        let m = cyc.len();
        let px = cyc.iter().position(|&v| v == self.x)?;
        // walk away from the fresh path
        let step = if cyc[(px + 1) % m] >= self.n {
            m - 1
        } else {
            1
        };
        let mut out = vec![self.x];
        let mut p = px;
        while out[out.len() - 1] != self.y {
            p = (p + step) % m;
            out.push(cyc[p]);
        }
        Some(out)
    }
}

/// Two `x`–`y` paths whose lengths differ by 1 or 2, if any exist: the
/// shortest length `a` for which `a + 1` or `a + 2` is also a path length,
/// preferring `a + 1`.
pub fn find_pair_diff12(g: &Graph, x: usize, y: usize) -> Result<Option<PathPair>> {
    let xy = XyPathLengths::new(g, x, y)?;
    let lengths = xy.lengths();
    for &a in &lengths {
        for d in [1, 2] {
            if lengths.contains(&(a + d)) {
                let short = xy.witness(a).expect("length is realized");
                let long = xy.witness(a + d).expect("length is realized");
                return Ok(Some(PathPair {
                    short,
                    long,
                    difference: d,
                }));
            }
        }
    }
    Ok(None)
}

/// Whether `a` and `b` are opposite corners of some 4-cycle `a c b d`.
pub fn opposite_in_four_cycle(g: &Graph, a: usize, b: usize) -> bool {
    four_cycle_through(g, a, b).is_some()
}

fn four_cycle_through(g: &Graph, a: usize, b: usize) -> Option<[usize; 4]> {
    if a == b {
        return None;
    }
    let common: Vec<usize> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&c| g.has_edge(c, b) && c != b)
        .collect();
    (common.len() >= 2).then(|| [a, common[0], b, common[1]])
}

/// Hypotheses under which two `x`–`y` paths with length difference 1 or 2
/// always exist: `g` 2-connected and subcubic, and every vertex other than
/// `x`, `y` and at most one further vertex has degree 3. Returns the failures.
pub fn three_exception_hypotheses(g: &Graph, x: usize, y: usize) -> Vec<String> {
    let mut out = Vec::new();
    if x == y || x >= g.vertex_count() || y >= g.vertex_count() {
        out.push("x and y must be distinct vertices".to_string());
        return out;
    }
    if !g.is_subcubic() {
        out.push("graph is not subcubic".into());
    }
    if !is_2_connected(g) {
        out.push("graph is not 2-connected".into());
    }
    let others: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| v != x && v != y && g.degree(v) != 3)
        .collect();
    if others.len() > 1 {
        out.push(format!(
            "vertices {others:?} besides x and y have degree other than 3"
        ));
    }
    out
}

/// Hypotheses with four degree-2 vertices `x1, x2` and two others: `g`
/// 2-connected, exactly four vertices of degree 2 including `x1, x2`, all
/// others of degree 3, `x1 x2` not an edge and not opposite in a 4-cycle.
pub fn four_exception_hypotheses(g: &Graph, x1: usize, x2: usize) -> Vec<String> {
    let mut out = Vec::new();
    if x1 == x2 || x1 >= g.vertex_count() || x2 >= g.vertex_count() {
        out.push("x1 and x2 must be distinct vertices".to_string());
        return out;
    }
    if !is_2_connected(g) {
        out.push("graph is not 2-connected".into());
    }
    let two: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 2)
        .collect();
    if two.len() != 4 || !two.contains(&x1) || !two.contains(&x2) {
        out.push(format!(
            "degree-2 vertices are {two:?}, expected four including x1 and x2"
        ));
    }
    if (0..g.vertex_count()).any(|v| g.degree(v) != 2 && g.degree(v) != 3) {
        out.push("some vertex has degree other than 2 or 3".into());
    }
    if g.has_edge(x1, x2) {
        out.push("x1 and x2 are adjacent".into());
    }
    if opposite_in_four_cycle(g, x1, x2) {
        out.push("x1 and x2 are opposite in a 4-cycle".into());
    }
    out
}

/// Induced cycle through the edge `st`, avoiding `r`, whose removal leaves
/// `g` connected. Exhaustive search over induced cycles through `st`.
pub fn nonseparating_induced_cycle(g: &Graph, s: usize, t: usize, r: usize) -> Result<Vec<usize>> {
    for v in [s, t, r] {
        g.check_vertex(v)?;
    }
    if !g.has_edge(s, t) {
        return Err(Error::Precondition(format!("({s},{t}) is not an edge")));
    }
    if r == s || r == t {
        return Err(Error::Precondition("r must differ from s and t".into()));
    }
    let n = g.vertex_count();
    let mut on = vec![false; n];
    on[s] = true;
    on[t] = true;
    let mut path = vec![s, t];
    let mut found = None;
    extend_induced(g, r, &mut path, &mut on, &mut found);
    if let Some(c) = found {
        return Ok(c);
    }
    let mut failed = Vec::new();
    if !is_3_connected(g) {
        failed.push("graph is not 3-connected");
    }
    if failed.is_empty() {
        Err(Error::Falsified(format!(
            "no non-separating induced cycle through ({s},{t}) avoiding {r}"
        )))
    } else {
        Err(Error::NotFound(format!(
            "no witness; hypothesis failed: {}",
            failed.join(", ")
        )))
    }
}

fn extend_induced(
    g: &Graph,
    r: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    found: &mut Option<Vec<usize>>,
) {
    let s = path[0];
    let last = path[path.len() - 1];
    let mut nbrs: Vec<usize> = g.neighbors(last).to_vec();
    nbrs.sort_unstable();
    for w in nbrs {
        if found.is_some() {
            return;
        }
        if on[w] || w == r {
            continue;
        }
        // w may touch only `last` and, when it closes the cycle, `s`
        let touches: Vec<usize> = g
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&q| on[q] && q != last)
            .collect();
        let closes = touches == [s];
        if !touches.is_empty() && !closes {
            continue;
        }
        path.push(w);
        on[w] = true;
        if closes {
            let allowed: Vec<bool> = on.iter().map(|&b| !b).collect();
            if g.components_within(Some(&allowed)).len() <= 1 {
                *found = Some(path.clone());
            }
        } else {
            extend_induced(g, r, path, on, found);
        }
        on[w] = false;
        path.pop();
    }
}

/// Result of [`pair_or_kclose`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairOrClose {
    Pair(PathPair),
    /// Disjoint paths from `{x1, x2}` to `{y, z}` and the number of edges of
    /// the graph with one end on each.
    Close {
        q1: Vec<usize>,
        q2: Vec<usize>,
        cross_edges: usize,
    },
}

/// Edges of `g` with one end on `a` and the other on `b`.
pub fn cross_edges(g: &Graph, a: &[usize], b: &[usize]) -> usize {
    let bs: BTreeSet<usize> = b.iter().copied().collect();
    let mut seen = BTreeSet::new();
    for &u in a {
        for &w in g.neighbors(u) {
            if bs.contains(&w) {
                seen.insert((u, w));
            }
        }
    }
    seen.len()
}

fn check_four_degree_two(g: &Graph, ends: [usize; 4], k: usize) -> Result<()> {
    let [x1, x2, y, _] = ends;
    if BTreeSet::from(ends).len() != 4 {
        return Err(Error::Precondition("x1, x2, y, z must be distinct".into()));
    }
    for v in ends {
        g.check_vertex(v)?;
        if g.degree(v) != 2 {
            return Err(Error::Precondition(format!(
                "vertex {v} has degree {}, expected 2",
                g.degree(v)
            )));
        }
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| !ends.contains(&v) && g.degree(v) != 3) {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {}, expected 3",
            g.degree(v)
        )));
    }
    if !is_2_connected(g) {
        return Err(Error::Precondition("graph is not 2-connected".into()));
    }
    for x in [x1, x2] {
        let d = g.distance(x, y)?;
        if d < k {
            return Err(Error::Precondition(format!(
                "dist({x}, {y}) = {d} < k = {k}"
            )));
        }
    }
    Ok(())
}

/// Either two `x1`–`x2` paths with length difference 1 or 2, or two disjoint
/// `{x1, x2}`–`{y, z}` paths joined by at least `k` edges.
///
/// Requires `g` 2-connected with exactly the four given vertices of degree 2,
/// all others of degree 3, and `dist(x1, y), dist(x2, y) ≥ k`. A path pair is
/// searched exactly first. Without one, `x1, x2` must be adjacent or opposite
/// in a 4-cycle; those vertices (and `z` when it hangs off them) are peeled
/// off and the search recurses with `k − 1` or `k − 2`, each peel adding one
/// or two joining edges.
pub fn pair_or_kclose(
    g: &Graph,
    x1: usize,
    x2: usize,
    y: usize,
    z: usize,
    k: usize,
) -> Result<PairOrClose> {
    check_four_degree_two(g, [x1, x2, y, z], k)?;
    let out = pair_or_close_rec(g, x1, x2, y, z, k)?;
    match &out {
        PairOrClose::Pair(p) => p
            .validate(g)
            .map_err(|e| Error::Falsified(format!("path pair: {e}")))?,
        PairOrClose::Close {
            q1,
            q2,
            cross_edges: c,
        } => {
            g.check_path(q1).map_err(Error::Falsified)?;
            g.check_path(q2).map_err(Error::Falsified)?;
            let starts = BTreeSet::from([q1[0], q2[0]]);
            let ends = BTreeSet::from([q1[q1.len() - 1], q2[q2.len() - 1]]);
            let disjoint = q1.iter().all(|v| !q2.contains(v));
            if starts != BTreeSet::from([x1, x2]) || ends != BTreeSet::from([y, z]) || !disjoint {
                return Err(Error::Falsified(
                    "joined paths have the wrong ends or intersect".into(),
                ));
            }
            if *c != cross_edges(g, q1, q2) || *c < k {
                return Err(Error::Falsified(format!("{c} joining edges, {k} required")));
            }
        }
    }
    Ok(out)
}

fn pair_or_close_rec(
    g: &Graph,
    x1: usize,
    x2: usize,
    y: usize,
    z: usize,
    k: usize,
) -> Result<PairOrClose> {
    if let Some(p) = find_pair_diff12(g, x1, x2)? {
        return Ok(PairOrClose::Pair(p));
    }
    let adjacent = g.has_edge(x1, x2);
    let square = if adjacent {
        None
    } else {
        four_cycle_through(g, x1, x2)
    };
    if !adjacent && square.is_none() {
        return Err(Error::Falsified(format!(
            "no path pair between non-adjacent {x1}, {x2} that are not opposite in a 4-cycle"
        )));
    }
    // the adjacency or the 4-cycle alone already joins any two disjoint paths by 1 or 2 edges
    if k <= if adjacent { 1 } else { 2 } {
        let ps = disjoint_paths(g, &[x1, x2], &[y, z], None, 2, true);
        if ps.len() < 2 {
            return Err(Error::Falsified("no two disjoint joining paths".into()));
        }
        let c = cross_edges(g, &ps[0], &ps[1]);
        if c < k {
            return Err(Error::Falsified(format!(
                "disjoint paths joined by {c} edges"
            )));
        }
        let (q1, q2) = if ps[0][0] == x1 {
            (ps[0].clone(), ps[1].clone())
        } else {
            (ps[1].clone(), ps[0].clone())
        };
        return Ok(PairOrClose::Close {
            q1,
            q2,
            cross_edges: c,
        });
    }
    // heads[i]: vertices prepended to the recursive path that starts at the new x_i
    let (mut removed, mut heads, mut next, gain): (Vec<usize>, [Vec<usize>; 2], [usize; 2], usize);
    if adjacent {
        removed = vec![x1, x2];
        heads = [vec![x1], vec![x2]];
        next = [0; 2];
        for (i, (x, other)) in [(x1, x2), (x2, x1)].into_iter().enumerate() {
            let mut nb = *g.neighbors(x).iter().find(|&&w| w != other).unwrap();
            if nb == z {
                heads[i].push(z);
                removed.push(z);
                nb = *g.neighbors(z).iter().find(|&&w| w != x).unwrap();
            }
            next[i] = nb;
        }
        gain = 1;
    } else {
        let [_, a, _, b] = square.unwrap();
        let out_of = |c: usize| {
            *g.neighbors(c)
                .iter()
                .find(|&&w| w != x1 && w != x2)
                .unwrap()
        };
        removed = vec![x1, a, x2, b];
        heads = [vec![x1, a], vec![x2, b]];
        next = [out_of(a), out_of(b)];
        for (i, via) in [a, b].into_iter().enumerate() {
            if next[i] == z {
                heads[i].push(z);
                removed.push(z);
                next[i] = *g.neighbors(z).iter().find(|&&w| w != via).unwrap();
            }
        }
        gain = 2;
    }
    if next[0] == next[1] || next.iter().any(|v| removed.contains(v)) {
        return Err(Error::Falsified(
            "peeling collapsed the attachment vertices".into(),
        ));
    }
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !removed.contains(v))
        .collect();
    let (h, map) = g.induced_subgraph(&keep);
    let local = |v: usize| keep.binary_search(&v).ok();
    let (Some(n1), Some(n2), Some(ly)) = (local(next[0]), local(next[1]), local(y)) else {
        return Err(Error::Falsified("attachment vertex removed".into()));
    };
    let Some(lz) = local(z) else {
        return Err(Error::Falsified(
            "z was peeled off but no path pair exists".into(),
        ));
    };
    if !is_2_connected(&h) {
        return Err(Error::Falsified(
            "peeled graph is not 2-connected but no path pair exists".into(),
        ));
    }
    let lift = |p: &[usize]| -> Vec<usize> { p.iter().map(|&v| map[v]).collect() };
    match pair_or_close_rec(&h, n1, n2, ly, lz, k.saturating_sub(gain))? {
        PairOrClose::Pair(p) => {
            // both paths run between the new attachments; extend them the same way
            let (s, l) = (lift(&p.short), lift(&p.long));
            let extend = |q: Vec<usize>| -> Vec<usize> {
                let q = if q[0] == next[0] {
                    q
                } else {
                    q.into_iter().rev().collect()
                };
                let mut out: Vec<usize> = heads[0].clone();
                out.extend(q);
                out.extend(heads[1].iter().rev());
                out
            };
            Ok(PairOrClose::Pair(PathPair {
                short: extend(s),
                long: extend(l),
                difference: p.difference,
            }))
        }
        PairOrClose::Close { q1, q2, .. } => {
            let (q1, q2) = (lift(&q1), lift(&q2));
            let mut paths = [Vec::new(), Vec::new()];
            for q in [q1, q2] {
                let i = if q[0] == next[0] { 0 } else { 1 };
                let mut p = heads[i].clone();
                p.extend(q);
                paths[i] = p;
            }
            let c = cross_edges(g, &paths[0], &paths[1]);
            let [q1, q2] = paths;
            Ok(PairOrClose::Close {
                q1,
                q2,
                cross_edges: c,
            })
        }
    }
}

/// Random instance for the three-exception hypotheses: a 2-connected cubic
/// graph on `n` vertices with `subdivisions ≤ 3` edges subdivided; `x`, `y`
/// cover all but at most one of the degree-2 vertices.
pub fn random_three_exception_instance<R: Rng>(
    n: usize,
    subdivisions: usize,
    rng: &mut R,
) -> (Graph, usize, usize) {
    let mut g = random_2_connected_cubic(n, rng);
    let mut new = Vec::new();
    for _ in 0..subdivisions.min(3) {
        let edges = g.edges();
        let &(a, b) = edges.choose(rng).unwrap();
        new.push(subdivide(&mut g, a, b));
    }
    new.shuffle(rng);
    let mut ends: Vec<usize> = new.iter().copied().take(2).collect();
    let mut rest: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !ends.contains(v))
        .collect();
    rest.shuffle(rng);
    // with three subdivision vertices the third is the allowed exception
    if new.len() == 3 {
        rest.retain(|&v| v != new[2]);
    }
    while ends.len() < 2 {
        ends.push(rest.pop().unwrap());
    }
    (g, ends[0], ends[1])
}

/// Random instance with four degree-2 vertices: a 2-connected cubic graph on
/// `n` vertices with four edge subdivisions. Returns the graph and the four
/// degree-2 vertices in random order.
pub fn random_four_exception_instance<R: Rng>(n: usize, rng: &mut R) -> (Graph, [usize; 4]) {
    let mut g = random_2_connected_cubic(n, rng);
    let mut new = Vec::new();
    for _ in 0..4 {
        let edges = g.edges();
        let &(a, b) = edges.choose(rng).unwrap();
        new.push(subdivide(&mut g, a, b));
    }
    new.shuffle(rng);
    (g, [new[0], new[1], new[2], new[3]])
}

/// A 4-cycle `x1 a x2 b` attached through `a`, `b` to the first rung of a
/// cross-ladder of length `3n`; the far rung ends are `y` and `z`. Returns the
/// graph and `[x1, x2, y, z]`. No two `x1`–`x2` paths differ in length by 1 or 2.
pub fn capped_cross_ladder(n: usize) -> (Graph, [usize; 4]) {
    let l = 3 * n;
    // u_i = i, v_i = l + 1 + i, then x1, a, x2, b
    let u = |i: usize| i;
    let v = |i: usize| l + 1 + i;
    let mut edges = Vec::new();
    for i in 0..l {
        edges.push((u(i), u(i + 1)));
        edges.push((v(i), v(i + 1)));
    }
    edges.push((u(l), v(l)));
    for i in 0..n {
        edges.push((u(3 * i), v(3 * i)));
        edges.push((u(3 * i + 1), v(3 * i + 2)));
        edges.push((u(3 * i + 2), v(3 * i + 1)));
    }
    let base = 2 * (l + 1);
    let (x1, a, x2, b) = (base, base + 1, base + 2, base + 3);
    edges.extend([(x1, a), (a, x2), (x2, b), (b, x1), (a, u(0)), (b, v(0))]);
    let g = Graph::from_edges(base + 4, &edges).expect("simple by construction");
    // the far rung u_l v_l closes the ladder path, so its ends have degree 2
    (g, [x1, x2, u(l), v(l)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, petersen, prism};
    use crate::oracle::xy_path_lengths;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arcs() {
        assert_eq!(arc_difference(&[0, 1, 2, 3, 4], 0, 2).unwrap(), 1);
        assert_eq!(arc_difference(&[0, 1, 2, 3, 4, 5], 1, 4).unwrap(), 0);
        assert_eq!(arc_difference(&[0, 1, 2, 3, 4, 5, 6], 3, 4).unwrap(), 5);
        assert!(arc_difference(&[0, 1, 2], 0, 7).is_err());
        assert_eq!(arc_split(&[0, 1, 2, 3, 4], 0, 2).unwrap().arcs, [2, 3]);
    }

    #[test]
    fn path_lengths_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = 2 * rng.gen_range(2..=5);
            let g = random_2_connected_cubic(n, &mut rng);
            let (x, y) = (0, rng.gen_range(1..n));
            let xy = XyPathLengths::new(&g, x, y).unwrap();
            let want: BTreeSet<usize> = xy_path_lengths(&g, x, y).keys().copied().collect();
            assert_eq!(xy.lengths(), want);
            for l in want {
                let p = xy.witness(l).unwrap();
                g.check_path(&p).unwrap();
                assert_eq!((p[0], p[p.len() - 1], p.len() - 1), (x, y, l));
            }
        }
    }

    #[test]
    fn k4_adjacent() {
        let p = find_pair_diff12(&complete(4), 0, 1).unwrap().unwrap();
        assert_eq!((p.short.len() - 1, p.long.len() - 1), (1, 2));
        p.validate(&complete(4)).unwrap();
    }

    #[test]
    fn even_cycle_antipodes() {
        assert_eq!(find_pair_diff12(&cycle(6), 0, 3).unwrap(), None);
    }

    #[test]
    fn induced_cycles() {
        let k4 = complete(4);
        let c = nonseparating_induced_cycle(&k4, 0, 1, 3).unwrap();
        assert_eq!(c, vec![0, 1, 2]);
        let pr = prism();
        // square edge 0–3 (triangles 0 1 2 and 3 4 5)
        let c = nonseparating_induced_cycle(&pr, 0, 3, 5).unwrap();
        assert!(c.contains(&0) && c.contains(&3) && !c.contains(&5));
        let p = petersen();
        let c = nonseparating_induced_cycle(&p, 0, 1, 7).unwrap();
        p.check_cycle(&c).unwrap();
        assert!(nonseparating_induced_cycle(&cycle(5), 0, 1, 3).is_err());
    }

    #[test]
    fn capped_ladder_has_no_pair() {
        for n in 1..=3 {
            let (g, [x1, x2, y, z]) = capped_cross_ladder(n);
            assert!(g.is_subcubic() && is_2_connected(&g));
            let two: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| g.degree(v) == 2)
                .collect();
            assert_eq!(BTreeSet::from_iter(two), BTreeSet::from([x1, x2, y, z]));
            assert_eq!(find_pair_diff12(&g, x1, x2).unwrap(), None);
        }
    }

    #[test]
    fn capped_ladder_close_paths() {
        for n in 1..=4 {
            let (g, [x1, x2, y, z]) = capped_cross_ladder(n);
            let k = g.distance(x1, y).unwrap().min(g.distance(x2, y).unwrap());
            match pair_or_kclose(&g, x1, x2, y, z, k).unwrap() {
                PairOrClose::Close { cross_edges, .. } => assert!(cross_edges >= k),
                PairOrClose::Pair(_) => panic!("capped ladder has no path pair"),
            }
        }
    }

    #[test]
    fn zero_k_gives_any_paths() {
        let (g, [x1, x2, y, z]) = capped_cross_ladder(1);
        assert!(matches!(
            pair_or_kclose(&g, x1, x2, y, z, 0).unwrap(),
            PairOrClose::Close { .. }
        ));
    }
}
