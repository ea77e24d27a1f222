//! Seeded random graph generators for tests and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::connectivity::{is_2_connected, is_3_connected};
use crate::graph::Graph;

/// Uniform-ish random cubic multigraph by the pairing model, rejected until simple.
/// `n` must be even and at least 4.
pub fn random_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(
        n >= 4 && n % 2 == 0,
        "cubic graphs need an even order of at least 4"
    );
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let mut g = Graph::new(n);
        if points.chunks(2).all(|p| g.add_edge(p[0], p[1]).is_ok()) {
            return g;
        }
    }
}

pub fn random_connected_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = random_cubic(n, rng);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_3_connected_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = random_cubic(n, rng);
        if is_3_connected(&g) {
            return g;
        }
    }
}

pub fn random_2_connected_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = random_cubic(n, rng);
        if is_2_connected(&g) {
            return g;
        }
    }
}

/// Replaces edge `u–v` by a path `u–w–v` through a new vertex `w`; returns `w`.
pub fn subdivide(g: &mut Graph, u: usize, v: usize) -> usize {
    assert!(g.remove_edge(u, v), "edge {u}-{v} missing");
    let w = g.add_vertex();
    g.add_edge(u, w).unwrap();
    g.add_edge(w, v).unwrap();
    w
}

/// Random 2-connected subcubic graph on at most `max_n` vertices (`max_n ≥ 4`):
/// a random 2-connected cubic graph with some edges deleted and some subdivided.
pub fn random_2_connected_subcubic<R: Rng>(max_n: usize, rng: &mut R) -> Graph {
    assert!(max_n >= 4);
    let top = if max_n % 2 == 0 { max_n } else { max_n - 1 };
    let n0 = 2 * rng.gen_range(2..=top / 2);
    let mut g = random_2_connected_cubic(n0, rng);
    let deletions = rng.gen_range(0..=n0 / 4);
    for _ in 0..deletions {
        let edges = g.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        g.remove_edge(u, v);
        if !is_2_connected(&g) {
            g.add_edge(u, v).unwrap();
        }
    }
    let room = max_n - g.vertex_count();
    let subdivisions = if room == 0 {
        0
    } else {
        rng.gen_range(0..=room.min(n0 / 2))
    };
    for _ in 0..subdivisions {
        let edges = g.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        subdivide(&mut g, u, v);
    }
    g
}
