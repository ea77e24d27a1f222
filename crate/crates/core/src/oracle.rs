//! Exhaustive cycle and path enumeration, residue spectra and modular cycle queries.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frontier::FrontierRun;
use crate::graph::Graph;

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSet {
    pub cycles: Vec<Vec<usize>>,
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSpectrum {
    pub k: usize,
    pub residues: Vec<usize>,
    /// One witness cycle per residue, keyed by residue.
    pub witnesses: BTreeMap<usize, Vec<usize>>,
}

/// Calls `visit` on every simple cycle exactly once. A cycle is reported
/// starting at its smallest vertex, oriented so that the second vertex is
/// smaller than the last. Stops early when `visit` returns `false`.
pub fn for_each_cycle(g: &Graph, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        let mut next = vec![0usize];
        while let Some(&top) = path.last() {
            let depth = path.len() - 1;
            if next[depth] < g.degree(top) {
                let w = g.neighbors(top)[next[depth]];
                next[depth] += 1;
                if w == s {
                    if path.len() >= 3 && path[1] < top && !visit(&path) {
                        return;
                    }
                } else if w > s && !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    next.push(0);
                }
            } else {
                on_path[top] = false;
                path.pop();
                next.pop();
            }
        }
    }
}

/// Every simple cycle of `g`, failing once more than `cap` cycles are found.
pub fn enumerate_cycles(g: &Graph, cap: Option<usize>) -> Result<CycleSet> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let mut cycles = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut overflow = false;
    for_each_cycle(g, |c| {
        if cycles.len() == cap {
            overflow = true;
            return false;
        }
        cycles.push(c.to_vec());
        *histogram.entry(c.len()).or_insert(0) += 1;
        true
    });
    if overflow {
        return Err(Error::CapExceeded { cap });
    }
    Ok(CycleSet { cycles, histogram })
}

/// Residues of cycle lengths modulo `k` with one witness each, computed exactly
/// by the frontier dynamic program. Each witness is the shortest cycle in its class.
pub fn residue_spectrum(g: &Graph, k: usize) -> ResidueSpectrum {
    assert!(k >= 1, "modulus must be positive");
    let run = FrontierRun::new(g, true);
    let mut witnesses = BTreeMap::new();
    for len in run.lengths() {
        witnesses
            .entry(len % k)
            .or_insert_with(|| run.witness(len).expect("length is present"));
    }
    ResidueSpectrum {
        k,
        residues: witnesses.keys().copied().collect(),
        witnesses,
    }
}

/// Residue spectrum from exhaustive enumeration; the witness per residue is the
/// first cycle found in enumeration order.
pub fn residue_spectrum_enumerated(
    g: &Graph,
    k: usize,
    cap: Option<usize>,
) -> Result<ResidueSpectrum> {
    assert!(k >= 1, "modulus must be positive");
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let mut witnesses = BTreeMap::new();
    let mut count = 0usize;
    let mut overflow = false;
    for_each_cycle(g, |c| {
        count += 1;
        if count > cap {
            overflow = true;
            return false;
        }
        witnesses.entry(c.len() % k).or_insert_with(|| c.to_vec());
        witnesses.len() < k
    });
    if overflow {
        return Err(Error::CapExceeded { cap });
    }
    Ok(ResidueSpectrum {
        k,
        residues: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// A cycle of length ≡ `m` (mod `k`), or `None` when no such cycle exists.
pub fn has_cycle_mod(g: &Graph, m: usize, k: usize) -> Option<Vec<usize>> {
    assert!(k >= 1 && m < k, "need 0 <= m < k");
    let run = FrontierRun::new(g, true);
    let len = run.lengths().into_iter().find(|l| l % k == m)?;
    run.witness(len)
}

/// Calls `visit` on every simple `x`–`y` path. Stops early when `visit` returns `false`.
pub fn for_each_path(g: &Graph, x: usize, y: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = g.vertex_count();
    if x == y || x >= n || y >= n {
        return;
    }
    let mut on_path = vec![false; n];
    on_path[x] = true;
    let mut path = vec![x];
    let mut next = vec![0usize];
    while let Some(&top) = path.last() {
        let depth = path.len() - 1;
        if next[depth] < g.degree(top) {
            let w = g.neighbors(top)[next[depth]];
            next[depth] += 1;
            if on_path[w] {
                continue;
            }
            if w == y {
                path.push(y);
                let go_on = visit(&path);
                path.pop();
                if !go_on {
                    return;
                }
            } else {
                on_path[w] = true;
                path.push(w);
                next.push(0);
            }
        } else {
            on_path[top] = false;
            path.pop();
            next.pop();
        }
    }
}

/// Lengths of simple `x`–`y` paths, each with the first witness found.
pub fn xy_path_lengths(g: &Graph, x: usize, y: usize) -> BTreeMap<usize, Vec<usize>> {
    assert!(x != y, "endpoints must differ");
    let mut out = BTreeMap::new();
    for_each_path(g, x, y, |p| {
        out.entry(p.len() - 1).or_insert_with(|| p.to_vec());
        true
    });
    out
}
