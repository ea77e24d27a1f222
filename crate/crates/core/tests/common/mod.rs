#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cycmod::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with `p` given in percent.
pub fn random_graph(n: usize, percent: u32, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_range(0..100) < percent {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Random connected graph: a random tree plus `extra` random edges.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let p = r.gen_range(0..v);
        g.add_edge(p, v).unwrap();
    }
    for _ in 0..extra {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// Random tree with maximum degree at most `max_degree`.
pub fn random_tree(n: usize, max_degree: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < max_degree).collect();
        let p = open[r.gen_range(0..open.len())];
        g.add_edge(p, v).unwrap();
    }
    g
}
