use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cycle_edges, edge_key, Graph};
use crate::monotone::{erdos_szekeres, longest_monotone, Direction, MonotoneWitness};
use crate::necklaces::ThetaGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCycle {
    pub cycle: Vec<usize>,
    pub matching_edges: usize,
    /// Whether `|M| ≥ 3k²`, so that `k` matching edges were promised.
    pub guaranteed: bool,
}

/// Union of the θ-graph and the matching, on vertex ids up to the largest used.
fn union_graph(theta: &ThetaGraph, m: &[(usize, usize)]) -> Result<Graph> {
    let n = theta
        .vertices()
        .into_iter()
        .chain(m.iter().flat_map(|&(a, b)| [a, b]))
        .max()
        .unwrap_or(0)
        + 1;
    let mut edges = theta.edges();
    edges.extend(m.iter().map(|&(a, b)| edge_key(a, b)));
    Graph::from_edges(n, &edges)
        .map_err(|e| Error::Precondition(format!("union is not simple: {e}")))
}

/// Cycle through `k` rungs between legs `i` and `j`, chosen by a monotone run.
fn weave(
    theta: &ThetaGraph,
    i: usize,
    j: usize,
    rungs: &[(usize, usize)],
    run: &MonotoneWitness,
) -> Vec<usize> {
    let (p1, p2) = (&theta.legs[i], &theta.legs[j]);
    let p3 = &theta.legs[3 - i - j];
    let pick: Vec<(usize, usize)> = run.indices.iter().map(|&x| rungs[x]).collect();
    let k = pick.len();
    let mut cyc: Vec<usize> = Vec::new();
    // appends leg positions from..=to (either direction), skipping a repeated first vertex
    let seg = |cyc: &mut Vec<usize>, leg: &[usize], from: usize, to: usize| {
        let it: Vec<usize> = if from <= to {
            leg[from..=to].to_vec()
        } else {
            leg[to..=from].iter().rev().copied().collect()
        };
        for v in it {
            if cyc.last() != Some(&v) {
                cyc.push(v);
            }
        }
    };
    seg(&mut cyc, p1, 0, pick[0].0);
    match run.direction {
        Direction::Increasing => {
            // zig-zag forward on both legs, finish at v and return along the third leg
            for t in 0..k {
                let (a, b) = pick[t];
                let on_p1 = t % 2 == 0;
                if t > 0 {
                    let (prev_a, prev_b) = pick[t - 1];
                    if on_p1 {
                        seg(&mut cyc, p1, prev_a, a);
                    } else {
                        seg(&mut cyc, p2, prev_b, b);
                    }
                }
                seg(
                    &mut cyc,
                    if on_p1 { p2 } else { p1 },
                    if on_p1 { b } else { a },
                    if on_p1 { b } else { a },
                );
            }
            let (a, b) = pick[k - 1];
            if k % 2 == 1 {
                seg(&mut cyc, p2, b, p2.len() - 1);
            } else {
                seg(&mut cyc, p1, a, p1.len() - 1);
            }
            seg(&mut cyc, p3, p3.len() - 1, 1);
        }
        Direction::Decreasing => {
            // forward on the first leg, backward on the second
            for t in 0..k {
                let (a, b) = pick[t];
                let on_p1 = t % 2 == 0;
                if t > 0 {
                    let (prev_a, prev_b) = pick[t - 1];
                    if on_p1 {
                        seg(&mut cyc, p1, prev_a, a);
                    } else {
                        seg(&mut cyc, p2, prev_b, b);
                    }
                }
                seg(
                    &mut cyc,
                    if on_p1 { p2 } else { p1 },
                    if on_p1 { b } else { a },
                    if on_p1 { b } else { a },
                );
            }
            let (a, b) = pick[k - 1];
            if k % 2 == 1 {
                seg(&mut cyc, p2, b, 1);
            } else {
                seg(&mut cyc, p1, a, p1.len() - 1);
                seg(&mut cyc, p3, p3.len() - 1, 1);
            }
        }
    }
    cyc
}

/// A cycle in the union of `theta` and the matching `m` containing at least
/// `k` edges of `m`. Every edge of `m` must join interior vertices of two
/// different legs.
pub fn cycle_through_matching(
    theta: &ThetaGraph,
    m: &[(usize, usize)],
    k: usize,
) -> Result<MatchingCycle> {
    let problems = theta.violations(None);
    if !problems.is_empty() {
        return Err(Error::Precondition(format!(
            "invalid θ-graph: {}",
            problems.join("; ")
        )));
    }
    let g = union_graph(theta, m)?;
    if !g.is_subcubic() {
        return Err(Error::Precondition("union is not subcubic".into()));
    }
    // leg index and position of every interior vertex
    let mut place = std::collections::BTreeMap::new();
    for (i, leg) in theta.legs.iter().enumerate() {
        for (p, &v) in leg.iter().enumerate().take(leg.len() - 1).skip(1) {
            place.insert(v, (i, p));
        }
    }
    let mut by_pair: [Vec<(usize, usize)>; 3] = Default::default();
    for &(a, b) in m {
        let (Some(&(la, pa)), Some(&(lb, pb))) = (place.get(&a), place.get(&b)) else {
            return Err(Error::Precondition(format!(
                "matching edge ({a},{b}) leaves the leg interiors"
            )));
        };
        if la == lb {
            return Err(Error::Precondition(format!(
                "matching edge ({a},{b}) stays on one leg"
            )));
        }
        let ((li, pi), (lj, pj)) = if la < lb {
            ((la, pa), (lb, pb))
        } else {
            ((lb, pb), (la, pa))
        };
        by_pair[li + lj - 1].push((pi, pj));
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let guaranteed = m.len() >= 3 * k * k;
    if k == 0 {
        return Ok(MatchingCycle {
            cycle: theta.legs[0]
                .iter()
                .chain(
                    theta.legs[1]
                        .iter()
                        .rev()
                        .skip(1)
                        .take(theta.legs[1].len() - 2),
                )
                .copied()
                .collect(),
            matching_edges: 0,
            guaranteed: true,
        });
    }
    let mut best: Option<MatchingCycle> = None;
    for (slot, &(i, j)) in pairs.iter().enumerate() {
        let mut rungs = by_pair[slot].clone();
        if rungs.is_empty() {
            continue;
        }
        rungs.sort_unstable();
        let seq: Vec<usize> = rungs.iter().map(|r| r.1).collect();
        let runs = if guaranteed {
            if rungs.len() < k * k {
                continue;
            }
            vec![erdos_szekeres(&seq, k, k)?]
        } else {
            vec![
                longest_monotone(&seq, Direction::Increasing),
                longest_monotone(&seq, Direction::Decreasing),
            ]
        };
        for run in runs {
            let cyc = weave(theta, i, j, &rungs, &run);
            g.check_cycle(&cyc)
                .map_err(|e| Error::Invalid(format!("woven cycle: {e}")))?;
            let ms: BTreeSet<(usize, usize)> = m.iter().map(|&(a, b)| edge_key(a, b)).collect();
            let count = cycle_edges(&cyc).iter().filter(|e| ms.contains(e)).count();
            if best.as_ref().is_none_or(|b| count > b.matching_edges) {
                best = Some(MatchingCycle {
                    cycle: cyc,
                    matching_edges: count,
                    guaranteed,
                });
            }
        }
        if guaranteed {
            break;
        }
    }
    match best {
        Some(b) if b.matching_edges >= k => Ok(b),
        Some(b) => Err(Error::NotFound(format!(
            "best cycle has {} < {k} matching edges",
            b.matching_edges
        ))),
        None => Err(Error::NotFound("no matching edges".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legs of length `len` between 0 and 1; interior vertices numbered per leg.
    fn theta(len: usize) -> ThetaGraph {
        let mut next = 2;
        let legs = [0, 1, 2].map(|_| {
            let mut l = vec![0];
            for _ in 1..len {
                l.push(next);
                next += 1;
            }
            l.push(1);
            l
        });
        ThetaGraph { u: 0, v: 1, legs }
    }

    #[test]
    fn single_rung() {
        let t = theta(3);
        let m = vec![(t.legs[0][1], t.legs[1][2])];
        let c = cycle_through_matching(&t, &m, 1).unwrap();
        assert_eq!(c.matching_edges, 1);
    }

    #[test]
    fn parallel_and_nested_rungs() {
        let t = theta(13);
        for k in 1..=3 {
            let par: Vec<_> = (1..13).map(|p| (t.legs[0][p], t.legs[1][p])).collect();
            let c = cycle_through_matching(&t, &par, k).unwrap();
            assert!(c.matching_edges >= k);
            let nest: Vec<_> = (1..13).map(|p| (t.legs[0][p], t.legs[1][13 - p])).collect();
            let c = cycle_through_matching(&t, &nest, k).unwrap();
            assert!(c.matching_edges >= k);
        }
    }

    #[test]
    fn rejects_same_leg() {
        let t = theta(4);
        assert!(cycle_through_matching(&t, &[(t.legs[0][1], t.legs[0][3])], 1).is_err());
    }
}
