//! Cubic 2-connected graphs with no cycle of length ≡ m (mod k) for 3 | m, 3 | k,
//! k ≥ 12: two copies of a small block joined through a cross-ladder.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connectivity::is_2_connected;
use crate::error::{Error, Result};
use crate::families::petersen;
use crate::generators::random_connected_cubic;
use crate::graph::Graph;
use crate::oracle::{for_each_cycle, residue_spectrum, xy_path_lengths};

/// Path `u_0 … u_{3N} v_{3N} … v_0` with rungs `u_{3i}v_{3i}` and crosses
/// `u_{3i+1}v_{3i+2}`, `u_{3i+2}v_{3i+1}`. Vertices are interleaved:
/// `u_i = 2i`, `v_i = 2i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossLadder {
    pub n: usize,
    pub graph: Graph,
}

impl CrossLadder {
    pub fn u(&self, i: usize) -> usize {
        2 * i
    }

    pub fn v(&self, i: usize) -> usize {
        2 * i + 1
    }

    /// `[u_0, v_0, u_{3N}, v_{3N}]`
    pub fn ends(&self) -> [usize; 4] {
        let l = 3 * self.n;
        [self.u(0), self.v(0), self.u(l), self.v(l)]
    }
}

fn ladder_edges(n: usize, offset: usize) -> Vec<(usize, usize)> {
    let l = 3 * n;
    let u = |i: usize| offset + 2 * i;
    let v = |i: usize| offset + 2 * i + 1;
    let mut edges = Vec::new();
    for i in 0..l {
        edges.extend([(u(i), u(i + 1)), (v(i), v(i + 1))]);
    }
    edges.push((u(l), v(l)));
    for i in 0..n {
        edges.extend([
            (u(3 * i), v(3 * i)),
            (u(3 * i + 1), v(3 * i + 2)),
            (u(3 * i + 2), v(3 * i + 1)),
        ]);
    }
    edges
}

pub fn build_cross_ladder(n: usize) -> Result<CrossLadder> {
    if n < 1 {
        return Err(Error::Precondition("cross-ladder needs N ≥ 1".into()));
    }
    let graph = Graph::from_edges(2 * (3 * n + 1), &ladder_edges(n, 0))?;
    Ok(CrossLadder { n, graph })
}

/// Two blocks joined by a cross-ladder, with the vertex ranges of each part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorJoin {
    pub graph: Graph,
    pub n: usize,
    /// First vertex of the first copy, the second copy and the ladder.
    pub offsets: [usize; 3],
    /// `[x1, y1, x2, y2]` in the joined graph.
    pub terminals: [usize; 4],
}

impl TensorJoin {
    /// 0 or 1 for the two blocks, 2 for the ladder.
    pub fn part(&self, x: usize) -> usize {
        if x >= self.offsets[2] {
            2
        } else if x >= self.offsets[1] {
            1
        } else {
            0
        }
    }
}

fn check_block(g: &Graph, x: usize, y: usize) -> Result<()> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y || g.degree(x) != 2 || g.degree(y) != 2 {
        return Err(Error::InvalidGraph(format!(
            "terminals {x}, {y} must be distinct vertices of degree 2"
        )));
    }
    if (0..g.vertex_count()).any(|w| w != x && w != y && g.degree(w) != 3) {
        return Err(Error::InvalidGraph(
            "non-terminal vertices must have degree 3".into(),
        ));
    }
    if !is_2_connected(g) {
        return Err(Error::InvalidGraph("block is not 2-connected".into()));
    }
    Ok(())
}

/// Joins `g1` and `g2` by a cross-ladder of length `3n` through the edges
/// `x1u_0`, `y1v_0`, `x2u_{3n}`, `y2v_{3n}`. Planar when both `gᵢ + xᵢyᵢ` are.
pub fn tensor_join(
    g1: &Graph,
    x1: usize,
    y1: usize,
    g2: &Graph,
    x2: usize,
    y2: usize,
    n: usize,
) -> Result<TensorJoin> {
    check_block(g1, x1, y1)?;
    check_block(g2, x2, y2)?;
    let ladder = build_cross_ladder(n)?;
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let offsets = [0, n1, n1 + n2];
    let mut edges: Vec<(usize, usize)> = g1.edges();
    edges.extend(g2.edges().into_iter().map(|(a, b)| (a + n1, b + n1)));
    edges.extend(
        ladder
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| (a + offsets[2], b + offsets[2])),
    );
    let [u0, v0, ul, vl] = ladder.ends().map(|e| e + offsets[2]);
    let terminals = [x1, y1, x2 + n1, y2 + n1];
    edges.extend([
        (terminals[0], u0),
        (terminals[1], v0),
        (terminals[2], ul),
        (terminals[3], vl),
    ]);
    let graph = Graph::from_edges(n1 + n2 + ladder.graph.vertex_count(), &edges)?;
    Ok(TensorJoin {
        graph,
        n,
        offsets,
        terminals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockCase {
    H1,
    H2,
    H3,
}

/// A block with two degree-2 terminals and its oracle-certified properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildingBlock {
    pub case: BlockCase,
    pub graph: Graph,
    pub x: usize,
    pub y: usize,
    /// Cycle lengths divisible by 3.
    pub div3_cycle_lengths: BTreeSet<usize>,
    pub xy_lengths: BTreeSet<usize>,
}

const H1_EDGES: [(usize, usize); 14] = [
    (0, 3),
    (0, 7),
    (0, 9),
    (1, 5),
    (1, 6),
    (1, 8),
    (2, 4),
    (2, 5),
    (2, 8),
    (3, 7),
    (3, 9),
    (4, 7),
    (5, 8),
    (6, 9),
];
const H1_TERMINALS: (usize, usize) = (4, 6);
/// K4 with one edge subdivided twice; the terminals are the subdivision vertices.
const H2_EDGES: [(usize, usize); 8] = [
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 5),
    (2, 3),
    (4, 5),
];
const H2_TERMINALS: (usize, usize) = (4, 5);

/// Allowed divisible-by-3 cycle lengths and `x`–`y` path lengths per case.
pub fn case_targets(case: BlockCase) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<usize>>();
    match case {
        BlockCase::H1 => (set(&[3, 9]), set(&[4, 5])),
        BlockCase::H2 => (set(&[3, 6]), set(&[1, 4, 5])),
        BlockCase::H3 => (set(&[6, 9]), set(&[4, 5, 7, 8])),
    }
}

fn certify(case: BlockCase, graph: Graph, x: usize, y: usize) -> Result<BuildingBlock> {
    check_block(&graph, x, y)?;
    let mut div3 = BTreeSet::new();
    for_each_cycle(&graph, |c| {
        if c.len() % 3 == 0 {
            div3.insert(c.len());
        }
        true
    });
    let xy: BTreeSet<usize> = xy_path_lengths(&graph, x, y).into_keys().collect();
    let (allowed_cycles, allowed_paths) = case_targets(case);
    if xy.iter().any(|l| l % 3 == 0)
        || !xy.is_subset(&allowed_paths)
        || !div3.is_subset(&allowed_cycles)
    {
        return Err(Error::Falsified(format!(
            "{case:?} block fails its property record"
        )));
    }
    Ok(BuildingBlock {
        case,
        graph,
        x,
        y,
        div3_cycle_lengths: div3,
        xy_lengths: xy,
    })
}

/// The block for `case`, certified by cycle and path enumeration. H3 is the
/// Petersen graph minus an edge; H1 and H2 are frozen outputs of [`synthesize_block`].
pub fn building_block(case: BlockCase) -> Result<BuildingBlock> {
    match case {
        BlockCase::H1 => certify(
            case,
            Graph::from_edges(10, &H1_EDGES)?,
            H1_TERMINALS.0,
            H1_TERMINALS.1,
        ),
        BlockCase::H2 => certify(
            case,
            Graph::from_edges(6, &H2_EDGES)?,
            H2_TERMINALS.0,
            H2_TERMINALS.1,
        ),
        BlockCase::H3 => {
            let mut g = petersen();
            g.remove_edge(0, 1);
            certify(case, g, 0, 1)
        }
    }
}

/// Searches for a block meeting the property record of `case`. H1 candidates
/// are cubic graphs on `n` vertices minus an edge; H2 candidates are cubic
/// graphs on `n − 2` vertices with one edge subdivided twice. Random cubic
/// graphs are drawn from a seeded generator, `attempts` of them.
pub fn synthesize_block(
    case: BlockCase,
    n: usize,
    seed: u64,
    attempts: usize,
) -> Option<BuildingBlock> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_n = match case {
        BlockCase::H1 => n,
        BlockCase::H2 => n.checked_sub(2)?,
        BlockCase::H3 => return building_block(case).ok(),
    };
    if base_n < 4 || base_n % 2 == 1 {
        return None;
    }
    for _ in 0..attempts {
        let g = random_connected_cubic(base_n, &mut rng);
        for (a, b) in g.edges() {
            let mut h = g.clone();
            h.remove_edge(a, b);
            let cand = match case {
                BlockCase::H1 => certify(case, h, a, b),
                _ => {
                    let (x, y) = (h.add_vertex(), h.add_vertex());
                    for (p, q) in [(a, x), (x, y), (y, b)] {
                        h.add_edge(p, q).ok()?;
                    }
                    certify(case, h, x, y)
                }
            };
            if let Ok(block) = cand {
                return Some(block);
            }
        }
    }
    None
}

/// Tally of the cycles of length divisible by 3 in a join of two copies of one block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Div3Classification {
    /// Cycles inside the first and the second copy.
    pub inside: [usize; 2],
    /// `(p1, p2) → count` for cycles through the ladder of length `6N + 4 + p1 + p2`.
    pub through: BTreeMap<(usize, usize), usize>,
    pub total: usize,
}

/// Classifies every cycle of length divisible by 3 in a join of two copies
/// of a block with no `x`–`y` path of length divisible by 3. Fails on the
/// first cycle that is neither inside a copy nor of the through-ladder form.
pub fn classify_div3_cycles(join: &TensorJoin, cap: Option<usize>) -> Result<Div3Classification> {
    let g = &join.graph;
    let ladder_len = 6 * join.n + 4;
    let mut out = Div3Classification::default();
    let mut failure = None;
    let cap = cap.unwrap_or(usize::MAX);
    let mut seen = 0usize;
    for_each_cycle(g, |c| {
        seen += 1;
        if seen > cap {
            failure = Some(Error::CapExceeded { cap });
            return false;
        }
        if c.len() % 3 != 0 {
            return true;
        }
        out.total += 1;
        let parts: BTreeSet<usize> = c.iter().map(|&x| join.part(x)).collect();
        if parts.len() == 1 && !parts.contains(&2) {
            out.inside[*parts.iter().next().unwrap()] += 1;
            return true;
        }
        let mut inner = [0usize; 2];
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            let (pa, pb) = (join.part(a), join.part(b));
            if pa == pb && pa < 2 {
                inner[pa] += 1;
            }
        }
        let [p1, p2] = inner;
        if p1 > 0 && p2 > 0 && c.len() == ladder_len + p1 + p2 && p1 % 3 == 1 && p2 % 3 == 1 {
            *out.through.entry((p1, p2)).or_insert(0) += 1;
            true
        } else {
            failure = Some(Error::Falsified(format!(
                "unclassified cycle of length {}: {c:?}",
                c.len()
            )));
            false
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub m: usize,
    pub k: usize,
    pub min_n: usize,
    /// Ladder parameter actually used.
    pub n_prime: usize,
    pub case: BlockCase,
    pub graph: Graph,
    /// All residues of cycle lengths modulo `k`.
    pub residues: Vec<usize>,
    pub verdict: Verdict,
}

/// Smallest `N' ≥ N` meeting the congruence of `case`, for `m` already reduced mod `k`.
pub fn choose_parameter(m: usize, k: usize, n: usize) -> (BlockCase, usize) {
    let n = n.max(1);
    match m {
        3 => (BlockCase::H3, (n..).find(|x| (x + 1) % k == 0).unwrap()),
        9 => (BlockCase::H2, (n..).find(|x| x % k == 1 % k).unwrap()),
        _ => (
            BlockCase::H1,
            (n..).find(|x| (6 * x + 12) % k != m).unwrap(),
        ),
    }
}

/// A cubic 2-connected graph with no cycle of length ≡ `m` (mod `k`), with at
/// least `n` vertices, certified by the exact cycle-length dynamic program.
pub fn build_counterexample(m: usize, k: usize, n: usize) -> Result<CounterexampleReport> {
    if k < 12 || k % 3 != 0 || m % 3 != 0 {
        return Err(Error::Precondition(format!(
            "need k ≥ 12 and 3 | m, 3 | k (m = {m}, k = {k})"
        )));
    }
    let m = m % k;
    let (case, mut n_prime) = choose_parameter(m, k, n);
    let block = building_block(case)?;
    let size = |np: usize| 2 * block.graph.vertex_count() + 2 * (3 * np + 1);
    while size(n_prime) < n {
        let (_, next) = choose_parameter(m, k, n_prime + 1);
        n_prime = next;
    }
    let (g, x, y) = (&block.graph, block.x, block.y);
    let join = tensor_join(g, x, y, g, x, y, n_prime)?;
    let spectrum = residue_spectrum(&join.graph, k);
    let verdict = if spectrum.residues.contains(&m) {
        Verdict::Falsified
    } else {
        Verdict::Certified
    };
    Ok(CounterexampleReport {
        m,
        k,
        min_n: n,
        n_prime,
        case,
        graph: join.graph,
        residues: spectrum.residues,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_3_connected, two_edge_cuts};
    use crate::oracle::enumerate_cycles;

    #[test]
    fn ladder_shape() {
        let l = build_cross_ladder(1).unwrap();
        assert_eq!((l.graph.vertex_count(), l.graph.edge_count()), (8, 10));
        let deg2: Vec<usize> = (0..8).filter(|&x| l.graph.degree(x) == 2).collect();
        let mut ends = l.ends().to_vec();
        ends.sort_unstable();
        assert_eq!(deg2, ends);
        assert!(l.graph.has_edge(l.u(0), l.v(0)) && l.graph.has_edge(l.u(3), l.v(3)));
        assert!(build_cross_ladder(0).is_err());
        for n in 1..=3 {
            let l = build_cross_ladder(n).unwrap();
            assert!(is_2_connected(&l.graph));
            let cycles = enumerate_cycles(&l.graph, None).unwrap();
            assert!(cycles.histogram.keys().all(|len| len % 3 != 0), "N = {n}");
        }
    }

    #[test]
    fn ladder_crossings_use_every_vertex() {
        for n in 1..=3 {
            let l = build_cross_ladder(n).unwrap();
            let [u0, v0, ul, vl] = l.ends();
            let mut h = l.graph.clone();
            let (s, t) = (h.add_vertex(), h.add_vertex());
            for (a, b) in [(s, u0), (s, v0), (t, ul), (t, vl)] {
                h.add_edge(a, b).unwrap();
            }
            let mut count = 0;
            for_each_cycle(&h, |c| {
                match (c.contains(&s), c.contains(&t)) {
                    (true, true) => {
                        assert_eq!(c.len(), 6 * n + 4);
                        count += 1;
                    }
                    (true, false) | (false, true) => assert_eq!(c.len() % 3, 0),
                    _ => assert_ne!(c.len() % 3, 0),
                }
                true
            });
            assert!(count > 0);
        }
    }

    #[test]
    fn blocks_certify() {
        for case in [BlockCase::H1, BlockCase::H2, BlockCase::H3] {
            let b = building_block(case).unwrap();
            let (cycles, paths) = case_targets(case);
            assert!(b.div3_cycle_lengths.is_subset(&cycles) && b.xy_lengths.is_subset(&paths));
        }
        let h3 = building_block(BlockCase::H3).unwrap();
        assert_eq!(h3.graph.vertex_count(), 10);
        assert_eq!(h3.xy_lengths, [4, 5, 7, 8].into_iter().collect());
        assert!(!h3.div3_cycle_lengths.contains(&3));
    }

    #[test]
    fn synthesis_finds_blocks() {
        let h2 = synthesize_block(BlockCase::H2, 6, 0, 4).unwrap();
        assert_eq!(h2.graph.vertex_count(), 6);
        let h1 = synthesize_block(BlockCase::H1, 10, 1, 200).unwrap();
        assert_eq!(h1.graph.vertex_count(), 10);
    }

    #[test]
    fn joins() {
        let b = building_block(BlockCase::H3).unwrap();
        let j = tensor_join(&b.graph, b.x, b.y, &b.graph, b.x, b.y, 1).unwrap();
        assert_eq!(j.graph.vertex_count(), 28);
        assert!(j.graph.is_cubic() && is_2_connected(&j.graph) && !is_3_connected(&j.graph));
        assert!(!two_edge_cuts(&j.graph).unwrap().is_empty());
        let c = classify_div3_cycles(&j, None).unwrap();
        assert!(c.through.keys().all(|&(p1, p2)| p1 % 3 == 1 && p2 % 3 == 1));
        assert!(!c.through.is_empty());
        assert!(tensor_join(&petersen(), 0, 1, &b.graph, b.x, b.y, 1).is_err());
    }

    #[test]
    fn parameters() {
        assert_eq!(choose_parameter(3, 12, 1), (BlockCase::H3, 11));
        assert_eq!(choose_parameter(9, 12, 1), (BlockCase::H2, 1));
        assert_eq!(choose_parameter(0, 12, 1), (BlockCase::H1, 1));
        assert_eq!(choose_parameter(6, 12, 1), (BlockCase::H1, 2));
        assert!(build_counterexample(3, 10, 1).is_err());
    }

    #[test]
    fn small_counterexamples() {
        for m in [0, 6, 9] {
            let r = build_counterexample(m, 12, 1).unwrap();
            assert_eq!(r.verdict, Verdict::Certified, "m = {m}");
            assert!(r.graph.is_cubic() && is_2_connected(&r.graph));
            assert!(r.residues.iter().any(|&x| x % 3 == 0));
        }
        let r = build_counterexample(9, 12, 1).unwrap();
        let brute = crate::oracle::residue_spectrum_enumerated(&r.graph, 12, None).unwrap();
        assert_eq!(brute.residues, r.residues);
        let r = build_counterexample(0, 12, 100).unwrap();
        assert!(r.graph.vertex_count() >= 100);
        assert_eq!(r.verdict, Verdict::Certified);
    }

    #[test]
    fn petersen_blocks_at_twelve() {
        let r = build_counterexample(3, 12, 1).unwrap();
        assert_eq!((r.n_prime, r.graph.vertex_count()), (11, 88));
        assert_eq!(r.verdict, Verdict::Certified);
    }
}
