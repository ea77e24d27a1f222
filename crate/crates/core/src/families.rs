//! Named small graphs used as fixtures and corpus members.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("fixture edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j).unwrap();
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j).unwrap();
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

/// Outer 5-cycle `0..5`, spokes `i–(i+5)`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &e)
}

/// Triangles `0,1,2` and `3,4,5` joined by `i–(i+3)`.
pub fn prism() -> Graph {
    build(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
}

/// Circular ladder `C_n × K_2`.
pub fn circular_ladder(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + 1) % n));
        e.push((i, n + i));
    }
    build(2 * n, &e)
}

/// Möbius ladder on `2n` vertices: a `2n`-cycle plus its long diagonals.
pub fn mobius_ladder(n: usize) -> Graph {
    let m = 2 * n;
    let mut e: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    for i in 0..n {
        e.push((i, i + n));
    }
    build(m, &e)
}

pub fn cube() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}

/// Incidence graph of the Fano plane.
pub fn heawood() -> Graph {
    let mut e: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for i in (0..14).step_by(2) {
        e.push((i, (i + 5) % 14));
    }
    build(14, &e)
}

/// Generalized Petersen graph GP(10, 2).
pub fn dodecahedron() -> Graph {
    generalized_petersen(10, 2)
}

pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        let _ = g.add_edge(i, (i + 1) % n);
        let _ = g.add_edge(i, n + i);
        let _ = g.add_edge(n + i, n + (i + k) % n);
    }
    g
}

/// Named cubic graphs of the fixture corpus.
pub fn cubic_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K4", complete(4)),
        ("K3,3", complete_bipartite(3, 3)),
        ("prism", prism()),
        ("cube", cube()),
        ("petersen", petersen()),
        ("mobius-kantor", generalized_petersen(8, 3)),
        ("circular-ladder-5", circular_ladder(5)),
        ("mobius-ladder-5", mobius_ladder(5)),
        ("heawood", heawood()),
        ("dodecahedron", dodecahedron()),
        ("desargues", generalized_petersen(10, 3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_3_connected;

    #[test]
    fn corpus_is_cubic_and_3_connected() {
        for (name, g) in cubic_corpus() {
            assert!(g.is_cubic(), "{name}");
            assert!(is_3_connected(&g), "{name}");
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(heawood().edge_count(), 21);
        assert_eq!(dodecahedron().edge_count(), 30);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
    }
}
