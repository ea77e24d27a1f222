use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{gcd, mod_inverse, Report};
use crate::connectivity::is_2_connected;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A 2-connected piece of a wiggly necklace with its two attachment vertices.
/// `wiggle`, when present, holds two `x`–`y` paths inside the block whose
/// lengths differ by 1 or 2, shorter first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceBlock {
    pub edges: Vec<(usize, usize)>,
    pub x: usize,
    pub y: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wiggle: Option<[Vec<usize>; 2]>,
}

impl NecklaceBlock {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The block as a graph on its own vertices, with the local→global map.
    fn local(&self) -> Option<(Graph, Vec<usize>)> {
        let vs = self.vertices();
        let idx = |v: usize| vs.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
        Graph::from_edges(vs.len(), &edges).ok().map(|g| (g, vs))
    }

    /// Step `|long| − |short|` of the wiggle witnesses.
    pub fn step(&self) -> Option<usize> {
        self.wiggle
            .as_ref()
            .map(|w| w[1].len().abs_diff(w[0].len()))
    }

    /// Shortest `x`–`y` path inside the block.
    fn shortest(&self) -> Option<Vec<usize>> {
        let (g, vs) = self.local()?;
        let idx = |v: usize| vs.binary_search(&v).ok();
        let p = g.shortest_path(idx(self.x)?, idx(self.y)?)?;
        Some(p.into_iter().map(|v| vs[v]).collect())
    }
}

/// Blocks joined cyclically: `connectors[j]` runs from `blocks[j].y` to `blocks[j + 1].x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WigglyNecklace {
    pub blocks: Vec<NecklaceBlock>,
    pub connectors: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WigglyRealization {
    pub cycle: Vec<usize>,
    pub base_length: usize,
    /// Common step of the switched blocks.
    pub step: usize,
    /// Blocks whose long witness path was used.
    pub switched: Vec<usize>,
}

impl WigglyNecklace {
    pub fn wiggle_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.wiggle.is_some()).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.edges.iter().copied())
            .collect();
        for c in &self.connectors {
            out.extend(c.windows(2).map(|w| (w[0], w[1])));
        }
        out
    }

    pub fn validate(&self, host: Option<&Graph>) -> Report {
        let mut r = Report::default();
        let l = self.blocks.len();
        if l == 0 || self.connectors.len() != l {
            r.push(format!(
                "{} blocks but {} connectors",
                l,
                self.connectors.len()
            ));
            return r.done();
        }
        let mut owner: BTreeMap<usize, String> = BTreeMap::new();
        for (j, b) in self.blocks.iter().enumerate() {
            match b.local() {
                Some((g, vs)) => {
                    if !is_2_connected(&g) {
                        r.push(format!("block {j} is not 2-connected"));
                    }
                    if b.x == b.y
                        || vs.binary_search(&b.x).is_err()
                        || vs.binary_search(&b.y).is_err()
                    {
                        r.push(format!(
                            "block {j}: attachments must be two distinct block vertices"
                        ));
                    }
                    if let Some([p, q]) = &b.wiggle {
                        for (name, w) in [("short", p), ("long", q)] {
                            let local: Option<Vec<usize>> =
                                w.iter().map(|v| vs.binary_search(v).ok()).collect();
                            let ok = local.is_some_and(|lp| g.check_path(&lp).is_ok())
                                && w.first() == Some(&b.x)
                                && w.last() == Some(&b.y);
                            if !ok {
                                r.push(format!(
                                    "block {j}: {name} witness is not an x–y path in the block"
                                ));
                            }
                        }
                        let diff = q.len() as i64 - p.len() as i64;
                        if diff != 1 && diff != 2 {
                            r.push(format!(
                                "block {j}: witness lengths differ by {diff}, expected 1 or 2"
                            ));
                        }
                    }
                    for v in vs {
                        if let Some(o) = owner.insert(v, format!("block {j}")) {
                            r.push(format!("vertex {v} shared by {o} and block {j}"));
                        }
                    }
                }
                None => r.push(format!("block {j} has repeated edges or loops")),
            }
        }
        for (j, c) in self.connectors.iter().enumerate() {
            let next = (j + 1) % l;
            if c.len() < 2 || c[0] != self.blocks[j].y || c[c.len() - 1] != self.blocks[next].x {
                r.push(format!(
                    "connector {j} does not run from y of block {j} to x of block {next}"
                ));
                continue;
            }
            for &v in &c[1..c.len() - 1] {
                if let Some(o) = owner.insert(v, format!("connector {j}")) {
                    r.push(format!("vertex {v} shared by {o} and connector {j}"));
                }
            }
        }
        r.check_union(&self.edges(), host);
        r.done()
    }

    fn cycle(&self, long: &[bool]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (j, b) in self.blocks.iter().enumerate() {
            let seg = match &b.wiggle {
                Some(w) => w[usize::from(long[j])].clone(),
                None => b
                    .shortest()
                    .ok_or_else(|| Error::Invalid(format!("block {j} has no x–y path")))?,
            };
            out.extend(seg);
            let c = &self.connectors[j];
            out.extend(&c[1..c.len() - 1]);
        }
        Ok(out)
    }
}

/// A cycle of length ≡ `m` (mod `k`) in a `2k`-wiggly necklace, `k` odd.
///
/// The base cycle takes the shorter witness in every wiggly block. The step
/// value (1 or 2) shared by the most wiggly blocks, 1 on ties, is used: the
/// first `s = (m − |C|)·x⁻¹ mod k` blocks with that step are switched.
pub fn realize_residue_wiggly(
    neck: &WigglyNecklace,
    m: usize,
    k: usize,
) -> Result<WigglyRealization> {
    if k % 2 == 0 {
        return Err(Error::Precondition(format!("modulus {k} must be odd")));
    }
    if neck.wiggle_count() < 2 * k {
        return Err(Error::InsufficientLevel(format!(
            "necklace is {}-wiggly, at least 2k = {} required",
            neck.wiggle_count(),
            2 * k
        )));
    }
    let report = neck.validate(None);
    if !report.valid {
        return Err(Error::Invalid(report.violations.join("; ")));
    }
    realize_with_majority(neck, m, k)
}

/// The switching step without the wiggle-count precondition; fails when too
/// few blocks share the majority step.
pub(crate) fn realize_with_majority(
    neck: &WigglyNecklace,
    m: usize,
    k: usize,
) -> Result<WigglyRealization> {
    let mut by_step: [Vec<usize>; 3] = Default::default();
    for (j, b) in neck.blocks.iter().enumerate() {
        if let Some(s) = b.step() {
            by_step[s].push(j);
        }
    }
    let step = if by_step[1].len() >= by_step[2].len() {
        1
    } else {
        2
    };
    let pool = &by_step[step];
    let base = neck.cycle(&vec![false; neck.blocks.len()])?;
    let target = (m % k + k - base.len() % k) % k;
    if gcd(step, k) != 1 {
        return Err(Error::Precondition(format!(
            "step {step} is not invertible modulo {k}"
        )));
    }
    let s = target * mod_inverse(step % k, k).unwrap_or(0) % k;
    if s > pool.len() {
        return Err(Error::Falsified(format!(
            "{} blocks with step {step}, {s} needed",
            pool.len()
        )));
    }
    let mut long = vec![false; neck.blocks.len()];
    let switched: Vec<usize> = pool[..s].to_vec();
    for &j in &switched {
        long[j] = true;
    }
    let cycle = neck.cycle(&long)?;
    if cycle.len() % k != m % k {
        return Err(Error::Falsified(format!(
            "cycle of length {} is not ≡ {m} (mod {k})",
            cycle.len()
        )));
    }
    Ok(WigglyRealization {
        cycle,
        base_length: base.len(),
        step,
        switched,
    })
}

/// Random necklace whose blocks are cycles. A wiggly block is a cycle of
/// length `2d + step` with the attachments at distance `d`; a plain block is
/// an even cycle with antipodal attachments. Connectors have length `1..=3`.
pub fn random_wiggly_necklace<R: Rng>(
    wiggly: usize,
    plain: usize,
    rng: &mut R,
) -> (Graph, WigglyNecklace) {
    let mut kinds: Vec<bool> = std::iter::repeat_n(true, wiggly)
        .chain(std::iter::repeat_n(false, plain))
        .collect();
    rand::seq::SliceRandom::shuffle(kinds.as_mut_slice(), rng);
    let mut next = 0usize;
    let mut blocks = Vec::new();
    for w in kinds {
        let d = rng.gen_range(1..=4);
        let len = if w {
            2 * d + rng.gen_range(1..=2)
        } else {
            2 * d.max(2)
        };
        let d = if w { d } else { len / 2 };
        let cyc: Vec<usize> = (next..next + len).collect();
        next += len;
        let edges: Vec<(usize, usize)> = (0..len).map(|i| (cyc[i], cyc[(i + 1) % len])).collect();
        let short: Vec<usize> = cyc[..=d].to_vec();
        let mut long: Vec<usize> = vec![cyc[0]];
        long.extend(cyc[d..].iter().rev());
        let wiggle = w.then_some([short, long]);
        blocks.push(NecklaceBlock {
            edges,
            x: cyc[0],
            y: cyc[d],
            wiggle,
        });
    }
    let l = blocks.len();
    let mut connectors = Vec::new();
    for j in 0..l {
        let len = rng.gen_range(1..=3);
        let mut c = vec![blocks[j].y];
        c.extend(next..next + len - 1);
        next += len - 1;
        c.push(blocks[(j + 1) % l].x);
        connectors.push(c);
    }
    let neck = WigglyNecklace { blocks, connectors };
    let g = Graph::from_edges(next, &neck.edges()).expect("blocks and connectors are disjoint");
    (g, neck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Necklace of `count` 5-cycles with attachments at distance 2 (step 1).
    fn pentagons(count: usize) -> (Graph, WigglyNecklace) {
        let mut blocks = Vec::new();
        for j in 0..count {
            let c: Vec<usize> = (5 * j..5 * j + 5).collect();
            let edges = (0..5).map(|i| (c[i], c[(i + 1) % 5])).collect();
            let wiggle = Some([vec![c[0], c[1], c[2]], vec![c[0], c[4], c[3], c[2]]]);
            blocks.push(NecklaceBlock {
                edges,
                x: c[0],
                y: c[2],
                wiggle,
            });
        }
        let connectors = (0..count)
            .map(|j| vec![5 * j + 2, 5 * ((j + 1) % count)])
            .collect();
        let neck = WigglyNecklace { blocks, connectors };
        (Graph::from_edges(5 * count, &neck.edges()).unwrap(), neck)
    }

    #[test]
    fn unit_steps_cover_residues() {
        let (g, n) = pentagons(6);
        assert!(n.validate(Some(&g)).valid);
        let mut seen = Vec::new();
        for m in 0..3 {
            let r = realize_residue_wiggly(&n, m, 3).unwrap();
            g.check_cycle(&r.cycle).unwrap();
            seen.push(r.cycle.len());
        }
        assert_eq!(seen, vec![18, 19, 20]);
    }

    #[test]
    fn step_two_block() {
        // 6-cycle with attachments at distance 2: witness lengths 2 and 4
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let b = NecklaceBlock {
            edges,
            x: 0,
            y: 2,
            wiggle: Some([vec![0, 1, 2], vec![0, 5, 4, 3, 2]]),
        };
        assert_eq!(b.step(), Some(2));
    }

    #[test]
    fn random_k5() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (g, n) = random_wiggly_necklace(10, 3, &mut rng);
        assert!(n.validate(Some(&g)).valid);
        for m in 0..5 {
            let r = realize_residue_wiggly(&n, m, 5).unwrap();
            assert_eq!(r.cycle.len() % 5, m);
            g.check_cycle(&r.cycle).unwrap();
        }
    }

    #[test]
    fn rejects_even_modulus_and_low_level() {
        let (_, n) = pentagons(6);
        assert!(realize_residue_wiggly(&n, 0, 4).is_err());
        assert!(matches!(
            realize_residue_wiggly(&n, 0, 5),
            Err(Error::InsufficientLevel(_))
        ));
    }
}
