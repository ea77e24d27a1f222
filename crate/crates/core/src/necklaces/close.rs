use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Report, ThetaGraph, ThetaNecklace};
use crate::connectivity::disjoint_paths;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monotone::erdos_szekeres;

/// A path and a cycle joined by pairwise disjoint connectors of length 1 or 2.
/// Each connector runs from a path vertex to a cycle vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClosePair {
    pub path: Vec<usize>,
    pub cycle: Vec<usize>,
    pub connectors: Vec<Vec<usize>>,
}

impl KClosePair {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.path.windows(2).map(|w| (w[0], w[1])).collect();
        let m = self.cycle.len();
        out.extend((0..m).map(|i| (self.cycle[i], self.cycle[(i + 1) % m])));
        for c in &self.connectors {
            out.extend(c.windows(2).map(|w| (w[0], w[1])));
        }
        out
    }

    pub fn validate(&self, host: Option<&Graph>) -> Report {
        let mut r = Report::default();
        if self.path.is_empty() {
            r.push("path is empty");
        }
        if self.cycle.len() < 3 {
            r.push(format!("cycle has {} vertices", self.cycle.len()));
        }
        let mut used = BTreeSet::new();
        for &v in self.path.iter().chain(&self.cycle) {
            if !used.insert(v) {
                r.push(format!("vertex {v} repeated on the path or cycle"));
            }
        }
        let on_path: BTreeSet<usize> = self.path.iter().copied().collect();
        let on_cycle: BTreeSet<usize> = self.cycle.iter().copied().collect();
        let mut ends = BTreeSet::new();
        for (j, c) in self.connectors.iter().enumerate() {
            if c.len() != 2 && c.len() != 3 {
                r.push(format!(
                    "connector {j} has length {}",
                    c.len().saturating_sub(1)
                ));
                continue;
            }
            if !on_path.contains(&c[0]) || !on_cycle.contains(&c[c.len() - 1]) {
                r.push(format!(
                    "connector {j} does not run from the path to the cycle"
                ));
            }
            if c.len() == 3 && !used.insert(c[1]) {
                r.push(format!(
                    "connector {j}: middle vertex {} is not private",
                    c[1]
                ));
            }
            for v in [c[0], c[c.len() - 1]] {
                if !ends.insert(v) {
                    r.push(format!("connectors share vertex {v}"));
                }
            }
        }
        r.check_union(&self.edges(), host);
        r.done()
    }
}

/// Maximum set of pairwise vertex-disjoint paths of length at most 2 from
/// `h1` to `h2`, by unit-capacity flow through the layered network `h1` →
/// outside vertices → `h2`. Each path starts in `h1` and ends in `h2`.
pub fn max_k_close_connectors(g: &Graph, h1: &[usize], h2: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut side = vec![0u8; n];
    for (s, set) in [(1u8, h1), (2u8, h2)] {
        for &v in set {
            g.check_vertex(v)?;
            if side[v] != 0 && side[v] != s {
                return Err(Error::Precondition(format!(
                    "vertex {v} lies in both subgraphs"
                )));
            }
            side[v] = s;
        }
    }
    // keep only h1–h2, h1–outside and outside–h2 edges
    let layered: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| {
            let (x, y) = (side[a].min(side[b]), side[a].max(side[b]));
            matches!((x, y), (1, 2) | (0, 1) | (0, 2))
        })
        .collect();
    let aux = Graph::from_edges(n, &layered)?;
    let raw = disjoint_paths(&aux, h1, h2, None, n, false);
    // a flow path may wander through further h1 or h2 vertices; keep the
    // last h1 vertex before its first h2 vertex
    let mut out = Vec::new();
    for p in raw {
        let first2 = p
            .iter()
            .position(|&v| side[v] == 2)
            .expect("flow paths end in h2");
        let last1 = p[..first2]
            .iter()
            .rposition(|&v| side[v] == 1)
            .expect("flow paths start in h1");
        out.push(p[last1..=first2].to_vec());
    }
    out.sort();
    Ok(out)
}

/// `k` disjoint connectors of length at most 2 between `h1` and `h2`, if they exist.
pub fn detect_k_close(
    g: &Graph,
    h1: &[usize],
    h2: &[usize],
    k: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    let mut all = max_k_close_connectors(g, h1, h2)?;
    if all.len() < k {
        return Ok(None);
    }
    all.truncate(k);
    Ok(Some(all))
}

/// A θ(t, i)-necklace with `i ∈ {1, 2}` from a path and cycle joined by at least `18t²` connectors.
///
/// The connector type (direct edges or length-2 paths) with at least `9t²`
/// members is used, direct edges first. Ordered by their path ends, their
/// cycle positions (on the cycle cut at its closing edge) contain a monotone
/// run of `3t`; consecutive triples of the run become θ-graphs whose middle
/// connector is the third leg. The cycle arcs between them are the necklace
/// connectors.
pub fn kclose_to_necklace(g: &Graph, pair: &KClosePair, t: usize) -> Result<ThetaNecklace> {
    let report = pair.validate(Some(g));
    if !report.valid {
        return Err(Error::Precondition(report.violations.join("; ")));
    }
    if t == 0 {
        return Err(Error::Precondition("need at least one θ-graph".into()));
    }
    let need = 18 * t * t;
    if pair.connectors.len() < need {
        return Err(Error::InsufficientLevel(format!(
            "{} connectors, at least 18t² = {need} required",
            pair.connectors.len()
        )));
    }
    let half = 9 * t * t;
    let direct: Vec<&Vec<usize>> = pair.connectors.iter().filter(|c| c.len() == 2).collect();
    let (mut chosen, i) = if direct.len() >= half {
        (direct, 1)
    } else {
        (pair.connectors.iter().filter(|c| c.len() == 3).collect(), 2)
    };
    let ppos = position_map(&pair.path);
    let cpos = position_map(&pair.cycle);
    chosen.sort_by_key(|c| ppos[&c[0]]);
    let seq: Vec<usize> = chosen.iter().map(|c| cpos[&c[c.len() - 1]]).collect();
    let run = erdos_szekeres(&seq, 3 * t, 3 * t)?;
    let cyc_len = pair.cycle.len();
    let mut thetas: Vec<(usize, usize, ThetaGraph)> = Vec::new();
    for tri in run.indices.chunks(3).take(t) {
        let [a, mid, b] = [tri[0], tri[1], tri[2]].map(|x| chosen[x]);
        let (pm, cm) = (ppos[&mid[0]], cpos[&mid[mid.len() - 1]]);
        let leg = |e: &Vec<usize>| -> Vec<usize> {
            let (pe, ce) = (ppos[&e[0]], cpos[&e[e.len() - 1]]);
            let mut l = segment(&pair.path, pm, pe);
            l.extend(&e[1..e.len() - 1]);
            l.extend(segment(&pair.cycle, ce, cm));
            l
        };
        let (ca, cb) = (cpos[&a[a.len() - 1]], cpos[&b[b.len() - 1]]);
        let (low, high) = if ca < cb { (a, b) } else { (b, a) };
        let theta = ThetaGraph {
            u: mid[0],
            v: mid[mid.len() - 1],
            legs: [leg(low), leg(high), mid.clone()],
        };
        thetas.push((ca.min(cb), ca.max(cb), theta));
    }
    thetas.sort_by_key(|x| x.0);
    let count = thetas.len();
    let mut connectors = Vec::new();
    for j in 0..count {
        let from = thetas[j].1;
        let to = thetas[(j + 1) % count].0;
        let mut c = vec![pair.cycle[from]];
        let mut p = from;
        while p != to || c.len() == 1 {
            p = (p + 1) % cyc_len;
            c.push(pair.cycle[p]);
        }
        connectors.push(c);
    }
    let neck = ThetaNecklace {
        i,
        thetas: thetas.into_iter().map(|x| x.2).collect(),
        connectors,
    };
    let report = neck.validate(Some(g));
    if !report.valid {
        return Err(Error::Invalid(report.violations.join("; ")));
    }
    Ok(neck)
}

fn position_map(seq: &[usize]) -> std::collections::HashMap<usize, usize> {
    seq.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}

/// `seq[from..=to]`, reversed when `from > to`.
fn segment(seq: &[usize], from: usize, to: usize) -> Vec<usize> {
    if from <= to {
        seq[from..=to].to_vec()
    } else {
        seq[to..=from].iter().rev().copied().collect()
    }
}

/// Random path/cycle pair with `count` connectors whose ends are spread over a
/// path and a cycle with up to `slack` unused vertices each. `long_share` is
/// the probability that a connector has length 2.
pub fn random_kclose_pair<R: Rng>(
    count: usize,
    slack: usize,
    long_share: f64,
    rng: &mut R,
) -> (Graph, KClosePair) {
    let plen = count + rng.gen_range(0..=slack);
    let clen = (count + rng.gen_range(0..=slack)).max(3);
    let path: Vec<usize> = (0..plen).collect();
    let cycle: Vec<usize> = (plen..plen + clen).collect();
    let mut next = plen + clen;
    let mut pends: Vec<usize> = path.clone();
    pends.shuffle(rng);
    let mut cends: Vec<usize> = cycle.clone();
    cends.shuffle(rng);
    let mut connectors = Vec::new();
    for j in 0..count {
        let mut c = vec![pends[j]];
        if rng.gen_bool(long_share.clamp(0.0, 1.0)) {
            c.push(next);
            next += 1;
        }
        c.push(cends[j]);
        connectors.push(c);
    }
    let pair = KClosePair {
        path,
        cycle,
        connectors,
    };
    let g = Graph::from_edges(next, &pair.edges()).expect("pair is simple by construction");
    (g, pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::circular_ladder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ladder_rungs() {
        let g = circular_ladder(8);
        let (h1, h2): (Vec<usize>, Vec<usize>) = ((0..8).collect(), (8..16).collect());
        let all = max_k_close_connectors(&g, &h1, &h2).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|c| c.len() == 2));
        assert!(detect_k_close(&g, &h1, &h2, 9).unwrap().is_none());
    }

    #[test]
    fn single_middle_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let all = max_k_close_connectors(&g, &[0, 1], &[3, 4]).unwrap();
        assert_eq!(all, vec![vec![1, 2, 3]]);
        assert!(max_k_close_connectors(&g, &[0, 1], &[1, 4]).is_err());
    }

    #[test]
    fn direct_and_subdivided() {
        for (share, i) in [(0.0, 1), (1.0, 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let (g, pair) = random_kclose_pair(18, 4, share, &mut rng);
            assert!(pair.validate(Some(&g)).valid);
            let n = kclose_to_necklace(&g, &pair, 1).unwrap();
            assert_eq!((n.i, n.len()), (i, 1));
        }
    }

    #[test]
    fn mixed_k2() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, pair) = random_kclose_pair(72, 10, 0.5, &mut rng);
            let n = kclose_to_necklace(&g, &pair, 2).unwrap();
            assert!(n.validate(Some(&g)).valid);
            assert_eq!(n.len(), 2);
        }
    }

    #[test]
    fn too_few_connectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g, pair) = random_kclose_pair(17, 2, 0.0, &mut rng);
        assert!(matches!(
            kclose_to_necklace(&g, &pair, 1),
            Err(Error::InsufficientLevel(_))
        ));
    }
}
