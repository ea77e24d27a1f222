//! Paths through many prescribed edges.
//!
//! [`path_with_chords`] handles a multigraph made of a Hamiltonian path plus
//! chords; [`path_with_special_edges`] reduces a 2-connected subcubic graph to
//! that situation around a long cycle; [`cycle_through_matching`] threads a
//! cycle through rungs between the legs of a θ-graph.

mod matching;
mod special;

pub use matching::{cycle_through_matching, MatchingCycle};
pub use special::{
    max_special_path_brute_force, path_with_special_edges, reduce, ReductionStep, RewriteKind,
    SpecialEdgeInstance, SpecialPath,
};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::monotone::{erdos_szekeres, longest_monotone, Direction};

/// Hamiltonian path `path` (a vertex order) plus chords; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordInstance {
    pub n: usize,
    pub path: Vec<usize>,
    pub chords: Vec<(usize, usize)>,
}

/// How a path moves between consecutive vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Path,
    Chord(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordPath {
    pub vertices: Vec<usize>,
    pub steps: Vec<Step>,
    /// Whether the chord-count bound held, so that at least `k` chords were promised.
    pub guaranteed: bool,
}

impl ChordPath {
    pub fn chord_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Chord(_)))
            .count()
    }

    pub fn chords_used(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| {
                if let Step::Chord(i) = s {
                    Some(*i)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Smallest chord count for which the extraction is promised: ⌈8k(k−1)/3⌉ + 1.
pub fn chord_bound(k: usize) -> usize {
    (8 * k * k.saturating_sub(1)).div_ceil(3) + 1
}

impl ChordInstance {
    pub fn new(path: Vec<usize>, chords: Vec<(usize, usize)>) -> Result<Self> {
        let inst = ChordInstance {
            n: path.len(),
            path,
            chords,
        };
        inst.check()?;
        Ok(inst)
    }

    pub fn check(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        if self.path.len() != self.n {
            return Err(Error::Precondition("path must visit every vertex".into()));
        }
        for &v in &self.path {
            if v >= self.n || seen[v] {
                return Err(Error::Precondition(format!(
                    "path is not a vertex permutation at {v}"
                )));
            }
            seen[v] = true;
        }
        let mg = self.multigraph()?;
        if !mg.is_subcubic() {
            return Err(Error::Precondition("multigraph is not subcubic".into()));
        }
        Ok(())
    }

    pub fn multigraph(&self) -> Result<MultiGraph> {
        let mut edges: Vec<(usize, usize)> = self.path.windows(2).map(|w| (w[0], w[1])).collect();
        edges.extend(&self.chords);
        MultiGraph::new(self.n, edges)
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n];
        for (i, &v) in self.path.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Checks that `p` is a simple path in the multigraph; returns its chord count.
    pub fn validate(&self, p: &ChordPath) -> std::result::Result<usize, String> {
        if p.vertices.is_empty() || p.steps.len() + 1 != p.vertices.len() {
            return Err("vertex and step counts disagree".into());
        }
        let pos = self.positions();
        let mut seen = vec![false; self.n];
        for &v in &p.vertices {
            if v >= self.n || seen[v] {
                return Err(format!("vertex {v} repeated or out of range"));
            }
            seen[v] = true;
        }
        for (i, s) in p.steps.iter().enumerate() {
            let (a, b) = (p.vertices[i], p.vertices[i + 1]);
            let ok = match *s {
                Step::Path => pos[a].abs_diff(pos[b]) == 1,
                Step::Chord(c) => {
                    c < self.chords.len() && {
                        let (x, y) = self.chords[c];
                        (x, y) == (a, b) || (y, x) == (a, b)
                    }
                }
            };
            if !ok {
                return Err(format!("step {i} from {a} to {b} is not an edge"));
            }
        }
        Ok(p.chord_count())
    }
}

/// Builder for paths expressed in path positions.
struct Walk {
    vertices: Vec<usize>,
    steps: Vec<Step>,
}

impl Walk {
    fn start(at: usize) -> Walk {
        Walk {
            vertices: vec![at],
            steps: Vec::new(),
        }
    }

    fn here(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Walks along the Hamiltonian path to position `to`.
    fn along(&mut self, to: usize) {
        while self.here() != to {
            let h = self.here();
            self.vertices.push(if to > h { h + 1 } else { h - 1 });
            self.steps.push(Step::Path);
        }
    }

    fn chord(&mut self, id: usize, to: usize) {
        self.vertices.push(to);
        self.steps.push(Step::Chord(id));
    }
}

#[derive(Clone, Copy, Debug)]
struct Chord {
    id: usize,
    l: usize,
    r: usize,
}

/// Zig-zag through nested chords (left ends ascending, right ends descending).
fn nested_path(chords: &[Chord]) -> Walk {
    let tie = chords.len() >= 2 && chords[0].l == chords[1].l;
    let mut on_left = !tie;
    let first = chords[0];
    let mut w = Walk::start(if on_left { first.l } else { first.r });
    for (j, c) in chords.iter().enumerate() {
        if j > 0 {
            w.along(if on_left { c.l } else { c.r });
        }
        w.chord(c.id, if on_left { c.r } else { c.l });
        on_left = !on_left;
    }
    w
}

/// Path through a set of pairwise non-crossing chords, left to right.
fn sequential_path(chords: &[Chord]) -> Walk {
    let mut w = Walk::start(chords[0].l);
    for c in chords {
        w.along(c.l);
        w.chord(c.id, c.r);
    }
    w
}

/// Path inside one class (left and right ends both ascending, all left ends
/// before the first right end), from its leftmost to its rightmost end.
fn class_path(f: &[Chord], w: &mut Walk) {
    let t = f.len();
    w.along(f[0].l);
    if t == 1 {
        w.chord(f[0].id, f[0].r);
        return;
    }
    if t == 2 {
        w.chord(f[0].id, f[0].r);
        w.along(f[1].l);
        w.chord(f[1].id, f[1].r);
        return;
    }
    // f1 from left to right, then alternate sides; odd t ends with f_t, even t
    // drops f_t and walks to its right end.
    let used = if t % 2 == 1 { t } else { t - 1 };
    for (j, c) in f[..used].iter().enumerate() {
        if j % 2 == 0 {
            if j > 0 {
                w.along(c.l);
            }
            w.chord(c.id, c.r);
        } else {
            w.along(c.r);
            w.chord(c.id, c.l);
        }
    }
    if t % 2 == 0 {
        w.along(f[t - 1].r);
    }
}

/// Chords with strictly increasing left and right ends: either a greedy
/// non-crossing chain, or every other class of chords grouped under the chain.
fn increasing_path(chords: &[Chord]) -> Walk {
    let mut chain: Vec<usize> = vec![0];
    loop {
        let last = chords[*chain.last().unwrap()];
        match (0..chords.len()).find(|&j| chords[j].l > last.r) {
            Some(j) => chain.push(j),
            None => break,
        }
    }
    let classes: Vec<Vec<Chord>> = chain
        .iter()
        .map(|&j| {
            let e = chords[j];
            chords
                .iter()
                .copied()
                .filter(|c| c.l >= e.l && c.l < e.r)
                .collect()
        })
        .collect();
    let gain = |c: &Vec<Chord>| {
        if c.len() >= 4 && c.len() % 2 == 0 {
            c.len() - 1
        } else {
            c.len()
        }
    };
    let odd: usize = classes.iter().step_by(2).map(gain).sum();
    let even: usize = classes.iter().skip(1).step_by(2).map(gain).sum();
    if chain.len() >= odd.max(even) {
        let picked: Vec<Chord> = chain.iter().map(|&j| chords[j]).collect();
        return sequential_path(&picked);
    }
    let offset = usize::from(even > odd);
    let chosen: Vec<&Vec<Chord>> = classes.iter().skip(offset).step_by(2).collect();
    let mut w = Walk::start(chosen[0][0].l);
    for class in chosen {
        class_path(class, &mut w);
    }
    w
}

fn to_chord_path(inst: &ChordInstance, w: Walk, guaranteed: bool) -> ChordPath {
    ChordPath {
        vertices: w.vertices.iter().map(|&p| inst.path[p]).collect(),
        steps: w.steps,
        guaranteed,
    }
}

/// Best path the extraction produces, whatever its chord count.
pub(crate) fn chord_path_best(inst: &ChordInstance, k: usize) -> Result<ChordPath> {
    inst.check()?;
    if inst.chords.is_empty() || k == 0 {
        return Ok(ChordPath {
            vertices: vec![inst.path[0]],
            steps: Vec::new(),
            guaranteed: true,
        });
    }
    let pos = inst.positions();
    let mut chords: Vec<Chord> = inst
        .chords
        .iter()
        .enumerate()
        .map(|(id, &(a, b))| {
            let (l, r) = if pos[a] < pos[b] {
                (pos[a], pos[b])
            } else {
                (pos[b], pos[a])
            };
            Chord { id, l, r }
        })
        .collect();
    // Left ends ascending; equal left ends by right end descending. Keys make
    // equal right ends (and identical chords) compare decreasingly, so ties
    // only ever land in nested runs.
    chords.sort_by_key(|c| (c.l, std::cmp::Reverse(c.r), c.id));
    let keys: Vec<(usize, std::cmp::Reverse<usize>, std::cmp::Reverse<usize>)> = chords
        .iter()
        .enumerate()
        .map(|(i, c)| (c.r, std::cmp::Reverse(c.l), std::cmp::Reverse(i)))
        .collect();

    let r = (8 * k).div_ceil(3);
    let guaranteed = inst.chords.len() >= chord_bound(k);
    let runs = if guaranteed {
        vec![erdos_szekeres(&keys, r, k)?]
    } else {
        vec![
            longest_monotone(&keys, Direction::Increasing),
            longest_monotone(&keys, Direction::Decreasing),
        ]
    };
    let candidates = runs.into_iter().map(|wit| {
        let picked: Vec<Chord> = wit.indices.iter().map(|&i| chords[i]).collect();
        match wit.direction {
            Direction::Decreasing => nested_path(&picked),
            Direction::Increasing => increasing_path(&picked),
        }
    });
    let mut best: Option<ChordPath> = None;
    for w in candidates {
        let p = to_chord_path(inst, w, guaranteed);
        if inst.validate(&p).is_ok()
            && best
                .as_ref()
                .is_none_or(|b| p.chord_count() > b.chord_count())
        {
            best = Some(p);
        }
    }
    best.ok_or_else(|| Error::Invalid("chord extraction produced no valid path".into()))
}

/// A path through at least `k` chords. Below the bound ⌈8k(k−1)/3⌉ + 1 the
/// extraction still runs, with `guaranteed = false`, and fails if it falls short.
pub fn path_with_chords(inst: &ChordInstance, k: usize) -> Result<ChordPath> {
    let p = chord_path_best(inst, k)?;
    if p.chord_count() >= k {
        Ok(p)
    } else if p.guaranteed {
        Err(Error::Invalid(format!(
            "extraction found {} < {k} chords above the bound",
            p.chord_count()
        )))
    } else {
        Err(Error::NotFound(format!(
            "{} chords is below the bound {}; best path has {} chords",
            inst.chords.len(),
            chord_bound(k),
            p.chord_count()
        )))
    }
}

/// Random instance with `chords` chords on a path of `chords + extra` or more
/// vertices: interior vertices take at most one chord, the two ends at most two.
pub fn random_chord_instance<R: Rng>(chords: usize, extra: usize, rng: &mut R) -> ChordInstance {
    let n = (chords + extra).max(3);
    loop {
        let mut slots: Vec<usize> = (1..n - 1).collect();
        slots.extend([0, 0, n - 1, n - 1]);
        slots.shuffle(rng);
        if slots.len() < 2 * chords {
            return random_chord_instance(chords, extra + chords, rng);
        }
        let picked = &slots[..2 * chords];
        let pairs: Vec<(usize, usize)> = picked.chunks(2).map(|c| (c[0], c[1])).collect();
        if pairs.iter().all(|&(a, b)| a != b) {
            return ChordInstance {
                n,
                path: (0..n).collect(),
                chords: pairs,
            };
        }
    }
}

/// Path `0..2K²` with `K` consecutive blocks of `K` nested chords each.
pub fn build_extremal_gk(k: usize) -> ChordInstance {
    assert!(k >= 1);
    let n = 2 * k * k;
    let mut chords = Vec::with_capacity(k * k);
    for b in 0..k {
        let base = 2 * k * b;
        for j in 0..k {
            chords.push((base + j, base + 2 * k - 1 - j));
        }
    }
    ChordInstance {
        n,
        path: (0..n).collect(),
        chords,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(inst: &ChordInstance, k: usize) -> usize {
        let p = path_with_chords(inst, k).unwrap();
        inst.validate(&p).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(chord_bound(1), 1);
        assert_eq!(chord_bound(2), 7);
        assert_eq!(chord_bound(3), 17);
        assert_eq!(chord_bound(4), 33);
    }

    #[test]
    fn single_chord() {
        let inst = ChordInstance::new(vec![0, 1, 2, 3], vec![(0, 3)]).unwrap();
        let p = path_with_chords(&inst, 1).unwrap();
        assert_eq!(p.vertices, vec![0, 3]);
        assert_eq!(p.steps, vec![Step::Chord(0)]);
    }

    #[test]
    fn nested_chords() {
        let chords: Vec<_> = (0..7).map(|j| (j, 13 - j)).collect();
        let inst = ChordInstance::new((0..14).collect(), chords).unwrap();
        assert!(count(&inst, 2) >= 2);
    }

    #[test]
    fn crossing_chords() {
        // chords (3j, 3j+4): each crosses the next one
        let chords: Vec<_> = (0..17).map(|j| (3 * j, 3 * j + 4)).collect();
        let n = 3 * 16 + 5;
        let mut inst = ChordInstance {
            n,
            path: (0..n).collect(),
            chords,
        };
        inst.check().unwrap();
        assert!(count(&inst, 3) >= 3);
        inst.chords.truncate(7);
        assert!(count(&inst, 2) >= 2);
    }

    #[test]
    fn shared_endpoint_ties() {
        // both ends of the path carry two chords
        let chords = vec![(0, 9), (0, 5), (4, 9), (1, 3), (2, 7), (6, 8)];
        let inst = ChordInstance::new((0..10).collect(), chords).unwrap();
        let p = chord_path_best(&inst, 2).unwrap();
        assert!(inst.validate(&p).unwrap() >= 2);
    }

    #[test]
    fn extremal_sizes() {
        for k in 1..=3 {
            let inst = build_extremal_gk(k);
            inst.check().unwrap();
            assert_eq!(inst.chords.len(), k * k);
        }
    }
}
